import numpy as np
import pytest

from qrng_pqc.bits import BitString
from qrng_pqc.errors import InvalidParameterError
from qrng_pqc.pqc import (
    MLDSA_SETS,
    MLKEM_SETS,
    SINGLE_CALL,
    SLH_PARAM_SETS,
    THREE_CALLS,
    MockBackend,
    SignRequest,
    canonical_algorithm,
    hash_slh_sign,
    mldsa_keygen,
    mldsa_sign,
    mlkem_encaps,
    mlkem_keygen,
    mock_backend,
    prehash_message,
    slh_keygen,
    slh_params,
    slh_sign,
)
from qrng_pqc.qsim import QrngConfig
from qrng_pqc.sources import FailingSource, PrngSource, QrngSource, StreamSource

SK = b"\x11" * 64
EK = b"\x22" * 32


def qrng(seed=0):
    return QrngSource(QrngConfig(num_qubits=8, sampler_seed=seed))


def der_oid(dotted):
    """Minimal DER OBJECT IDENTIFIER encoder used as an independent oracle."""
    arcs = [int(a) for a in dotted.split(".")]
    body = [40 * arcs[0] + arcs[1]]
    for arc in arcs[2:]:
        chunk = [arc & 0x7F]
        arc >>= 7
        while arc:
            chunk.append(0x80 | (arc & 0x7F))
            arc >>= 7
        body.extend(reversed(chunk))
    return bytes([0x06, len(body)] + body)


class TestParams:
    def test_table(self):
        assert len(SLH_PARAM_SETS) == 12
        rows = {(p.n, p.seed_bits, p.security_level) for p in SLH_PARAM_SETS.values()}
        assert rows == {(16, 128, 1), (24, 192, 3), (32, 256, 5)}

    def test_lookup(self):
        assert slh_params("slhdsa-shake-128f").name == "SLH-DSA-SHAKE-128f"
        assert slh_params("SLH-DSA-SHA2-256s").n == 32
        with pytest.raises(InvalidParameterError):
            slh_params("slhdsa-shake-512f")

    def test_canonical(self):
        assert canonical_algorithm("mlkem-768") == "ML-KEM-768"
        assert canonical_algorithm("mldsa-87") == "ML-DSA-87"
        assert canonical_algorithm("slhdsa-shake-192f") == "SLH-DSA-SHAKE-192f"


class TestConsumption:
    @pytest.mark.parametrize("name", MLKEM_SETS)
    def test_mlkem(self, name):
        src, be = qrng(), mock_backend(name)
        ek, dk = mlkem_keygen(src, be)
        assert src.bits_served == 512 and src.roles == ["d", "z"]
        assert mlkem_encaps(src, be, ek) is not None
        assert src.bits_served == 768 and src.roles[-1] == "m"

    @pytest.mark.parametrize("name", MLDSA_SETS)
    def test_mldsa(self, name):
        src, be = qrng(), mock_backend(name)
        pk, sk = mldsa_keygen(src, be)
        assert src.bits_served == 256
        assert mldsa_sign(src, be, SignRequest(b"msg"), sk) is not None
        assert src.bits_served == 512 and src.roles == ["xi", "rnd"]

    @pytest.mark.parametrize("params", list(SLH_PARAM_SETS.values()), ids=lambda p: p.name)
    @pytest.mark.parametrize("mode", [THREE_CALLS, SINGLE_CALL])
    def test_slh(self, params, mode):
        src, be = qrng(), mock_backend(params.name)
        sk, pk = slh_keygen(src, be, params, mode)
        assert src.bits_served == 24 * params.n
        assert len(src.draws) == (3 if mode == THREE_CALLS else 1)
        slh_sign(src, be, SignRequest(b"m"), sk, params)
        assert src.bits_served == 32 * params.n
        hash_slh_sign(src, be, SignRequest(b"m", prehash="SHA-256"), sk, params)
        assert src.bits_served == 40 * params.n

    def test_published_totals(self):
        totals = {}
        for size in ("128f", "192f", "256f"):
            src = qrng()
            slh_keygen(src, mock_backend(), slh_params(f"SLH-DSA-SHAKE-{size}"))
            totals[size] = src.bits_served
        assert totals == {"128f": 384, "192f": 576, "256f": 768}

    def test_seed_lengths_reach_backend(self):
        be = MockBackend()
        slh_keygen(qrng(), be, slh_params("SLH-DSA-SHAKE-192f"))
        assert [len(v) for _, v in be.calls[0].args] == [24, 24, 24]
        mlkem_keygen(qrng(), be)
        assert [len(v) for _, v in be.calls[1].args] == [32, 32]


FLOWS = {
    "mlkem_keygen": (lambda s, b: mlkem_keygen(s, b), 2),
    "mlkem_encaps": (lambda s, b: mlkem_encaps(s, b, EK), 1),
    "mldsa_keygen": (lambda s, b: mldsa_keygen(s, b), 1),
    "mldsa_sign": (lambda s, b: mldsa_sign(s, b, SignRequest(b"x"), SK), 1),
    "slh_keygen": (lambda s, b: slh_keygen(s, b, slh_params("SLH-DSA-SHAKE-128f")), 3),
    "slh_keygen_single": (lambda s, b: slh_keygen(s, b, slh_params("SLH-DSA-SHAKE-128f"), SINGLE_CALL), 1),
    "slh_sign": (lambda s, b: slh_sign(s, b, SignRequest(b"x"), SK, slh_params("SLH-DSA-SHAKE-128f")), 1),
    "hash_slh_sign": (
        lambda s, b: hash_slh_sign(s, b, SignRequest(b"x", prehash="SHAKE256"), SK, slh_params("SLH-DSA-SHAKE-256f")),
        1,
    ),
}


class TestFailure:
    @pytest.mark.parametrize("mode", ["raise", "null"])
    @pytest.mark.parametrize("flow", list(FLOWS))
    def test_failure_at_every_draw(self, flow, mode):
        run, draws = FLOWS[flow]
        for position in range(draws):
            inner = qrng()
            src = FailingSource(inner, fail_at=position, mode=mode)
            be = MockBackend()
            assert run(src, be) is None
            assert be.calls == []
            # completed draws only, nothing after the failing one
            assert len(src.draws) == position
            assert inner.bits_served == src.bits_served

    @pytest.mark.parametrize("flow", ["mldsa_sign", "slh_sign", "hash_slh_sign"])
    def test_oversize_context_rejected_before_draw(self, flow):
        src, be = qrng(), MockBackend()
        params = slh_params("SLH-DSA-SHAKE-128f")
        big = SignRequest(b"x", ctx=bytes(256), prehash="SHA-256")
        result = {
            "mldsa_sign": lambda: mldsa_sign(src, be, big, SK),
            "slh_sign": lambda: slh_sign(src, be, big, SK, params),
            "hash_slh_sign": lambda: hash_slh_sign(src, be, big, SK, params),
        }[flow]()
        assert result is None
        assert src.bits_served == 0 and be.calls == []

    def test_max_context_accepted(self):
        src = qrng()
        assert slh_sign(src, MockBackend(), SignRequest(b"x", ctx=bytes(255)), SK, slh_params("SLH-DSA-SHA2-128s"))

    def test_exhausted_stream_is_failure(self):
        src = StreamSource(BitString.zeros(300))
        be = MockBackend()
        assert mlkem_keygen(src, be) is None
        assert src.bits_served == 256 and be.calls == []

    def test_unknown_prehash(self):
        src = qrng()
        with pytest.raises(InvalidParameterError):
            hash_slh_sign(src, MockBackend(), SignRequest(b"x", prehash="MD5"), SK, slh_params("SLH-DSA-SHAKE-128f"))
        assert src.bits_served == 0


class TestFraming:
    def test_pure_message(self):
        be = MockBackend()
        slh_sign(qrng(), be, SignRequest(b"abc"), SK, slh_params("SLH-DSA-SHAKE-128f"))
        args = dict(be.calls[0].args)
        assert args["M'"] == b"\x00\x00abc"
        assert len(args["addrnd"]) == 16

    def test_empty_message(self):
        be = MockBackend()
        slh_sign(qrng(), be, SignRequest(b""), SK, slh_params("SLH-DSA-SHAKE-128f"))
        assert dict(be.calls[0].args)["M'"] == b"\x00\x00"

    def test_context_framing(self):
        be = MockBackend()
        mldsa_sign(qrng(), be, SignRequest(b"hi", ctx=b"app"), SK)
        assert dict(be.calls[0].args)["M'"] == b"\x00\x03apphi"

    def test_sha256_prehash(self):
        m = prehash_message(SignRequest(b"abc", ctx=b"", prehash="SHA-256"))
        oid = der_oid("2.16.840.1.101.3.4.2.1")
        digest = bytes.fromhex("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad")
        assert m == b"\x01\x00" + oid + digest

    @pytest.mark.parametrize(
        "name, arc, size", [("SHA-512", 3, 64), ("SHAKE128", 11, 32), ("SHAKE256", 12, 64)]
    )
    def test_other_prehashes(self, name, arc, size):
        m = prehash_message(SignRequest(b"abc", ctx=b"c", prehash=name))
        oid = der_oid(f"2.16.840.1.101.3.4.2.{arc}")
        assert m[:3] == b"\x01\x01c"
        assert m[3:3 + len(oid)] == oid
        assert len(m) == 3 + len(oid) + size

    def test_domain_separator(self):
        be = MockBackend()
        params = slh_params("SLH-DSA-SHAKE-128f")
        slh_sign(qrng(), be, SignRequest(b"abc"), SK, params)
        hash_slh_sign(qrng(), be, SignRequest(b"abc", prehash="SHA-256"), SK, params)
        assert dict(be.calls[0].args)["M'"][0] == 0
        assert dict(be.calls[1].args)["M'"][0] == 1


class TestSplitEquivalence:
    @pytest.mark.parametrize("params", [slh_params(f"SLH-DSA-SHAKE-{s}f") for s in (128, 192, 256)], ids=str)
    def test_same_stream_same_keys(self, params):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            stream = BitString(rng.integers(0, 2, 24 * params.n))
            a, b = MockBackend(), MockBackend()
            ka = slh_keygen(StreamSource(stream), a, params, THREE_CALLS)
            kb = slh_keygen(StreamSource(stream), b, params, SINGLE_CALL)
            assert ka == kb
            assert a.calls[0].args == b.calls[0].args

    def test_first_slice_is_sk_seed(self):
        stream = BitString(np.r_[np.ones(128), np.zeros(256)].astype(np.uint8))
        be = MockBackend()
        slh_keygen(StreamSource(stream), be, slh_params("SLH-DSA-SHAKE-128f"), SINGLE_CALL)
        assert dict(be.calls[0].args) == {"SK.seed": b"\xff" * 16, "SK.prf": bytes(16), "PK.seed": bytes(16)}


class TestMockBackend:
    def test_deterministic(self):
        assert MockBackend().mlkem_keygen_internal(b"a" * 32, b"b" * 32) == MockBackend().mlkem_keygen_internal(
            b"a" * 32, b"b" * 32
        )

    def test_bit_flip_changes_output(self):
        d = bytearray(32)
        base = MockBackend().mlkem_keygen_internal(bytes(d), bytes(32))
        d[0] ^= 1
        assert MockBackend().mlkem_keygen_internal(bytes(d), bytes(32)) != base

    def test_argument_order_matters(self):
        be = MockBackend()
        x, y = b"\x01" * 32, b"\x02" * 32
        assert be.mlkem_keygen_internal(x, y) != be.mlkem_keygen_internal(y, x)
        assert [n for n, _ in be.calls[0].args] == ["d", "z"]

    def test_replay_gives_same_keys(self):
        stream = BitString(np.random.default_rng(1).integers(0, 2, 512))
        assert mlkem_keygen(StreamSource(stream), MockBackend()) == mlkem_keygen(StreamSource(stream), MockBackend())

    def test_encaps_determinism(self):
        stream = BitString(np.random.default_rng(2).integers(0, 2, 256))
        a = mlkem_encaps(StreamSource(stream), MockBackend(), EK)
        assert a == mlkem_encaps(StreamSource(stream), MockBackend(), EK)

    def test_transcript_round_trip(self):
        be = MockBackend("ML-KEM-512")
        ek, _ = mlkem_keygen(qrng(), be)
        mlkem_encaps(qrng(1), be, ek)
        calls = MockBackend.load_transcript(be.dump_transcript())
        assert calls == be.calls
        assert [c.function for c in calls] == ["mlkem_keygen_internal", "mlkem_encaps_internal"]

    def test_param_set_separates_outputs(self):
        assert MockBackend("ML-KEM-512").mldsa_keygen_internal(b"x") != MockBackend("ML-KEM-768").mldsa_keygen_internal(
            b"x"
        )


class TestSources:
    def test_prng_source(self):
        a, b = PrngSource(5), PrngSource(5)
        assert a.request(300) == b.request(300)
        assert a.bits_served == 300

    def test_seed_bytes_are_lsb_first(self):
        stream = BitString([1, 0, 0, 0, 0, 0, 0, 0] * 64)
        be = MockBackend()
        mlkem_keygen(StreamSource(stream), be)
        assert dict(be.calls[0].args)["d"] == b"\x01" * 32

    def test_request_validation(self):
        with pytest.raises(InvalidParameterError):
            qrng().request(0)
