"""
Extractor-based key agreement and a counter-driven demonstration stream.

``dh_derive`` runs an elliptic-curve Diffie-Hellman exchange and replaces the
usual hash-based key derivation with L_k / D_k (single source) or with
ext1 / ext2 applied to the shared points of two independent exchanges.

``prng_next`` is a DEMO, not a secure DRBG: it walks scalar counters through
two subgroups and emits the two-source extractor output at each step.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from .curve import Curve, Point, Subgroup, scalar_mul
from .errors import AbscissaUndefined, DerivationFailed
from .extractors import BitString, CoeffVector, Output, extract, extractor_for
from .finite_field import PrimeField

DEMO_LABEL = "demo - not a secure DRBG"


@dataclass(frozen=True)
class Exchange:
    """One Diffie-Hellman exchange on <generator>; secrets are kept out of ``public()``."""

    generator: Point
    order: int
    a: int
    b: int

    def __post_init__(self):
        for name, v in (("a", self.a), ("b", self.b)):
            if not 1 <= v < self.order:
                raise ValueError(f"secret {name}={v} outside [1, {self.order})")

    @property
    def alice_public(self) -> Point:
        return scalar_mul(self.a, self.generator)

    @property
    def bob_public(self) -> Point:
        return scalar_mul(self.b, self.generator)

    def shared_points(self) -> Tuple[Point, Point]:
        """K_AB as computed by each party: [a]([b]G) and [b]([a]G)."""
        return scalar_mul(self.a, self.bob_public), scalar_mul(self.b, self.alice_public)

    def public(self) -> dict:
        return {
            "generator": self.generator.to_json(),
            "order": self.order,
            "alice_public": self.alice_public.to_json(),
            "bob_public": self.bob_public.to_json(),
        }


@dataclass(frozen=True)
class DhSession:
    curve: Curve
    mode: str
    k: int
    extractor: str
    alice_key: Output
    bob_key: Output
    transcript: dict

    @property
    def key(self) -> Output:
        return self.alice_key


def _key_json(key: Output):
    return key.to_json()


def dh_derive(
    curve: Curve,
    G: Point,
    order: int,
    a: int,
    b: int,
    k: int,
    mode: str = "single",
    second: Optional[Tuple[Point, int, int, int]] = None,
) -> DhSession:
    """Agree on K_AB = [ab]G and derive a k-symbol key from it.

    ``mode="two_source"`` needs ``second = (G2, order2, a2, b2)``, a second
    exchange whose shared point K'_AB is combined through ext1 / ext2.
    """
    if G.curve != curve:
        raise ValueError("generator is not on the given curve")
    if mode not in ("single", "two_source"):
        raise ValueError(f"mode must be 'single' or 'two_source', got {mode!r}")
    exchanges = [Exchange(G, order, a, b)]
    if mode == "two_source":
        if second is None:
            raise ValueError("two_source mode needs a second exchange (G2, order2, a2, b2)")
        G2, order2, a2, b2 = second
        if G2.curve != curve:
            raise ValueError("second generator is not on the given curve")
        exchanges.append(Exchange(G2, order2, a2, b2))

    alice_pts, bob_pts = [], []
    for ex in exchanges:
        ka, kb = ex.shared_points()
        if ka.is_infinity or kb.is_infinity:
            raise DerivationFailed("shared point is the point at infinity; choose new secrets")
        alice_pts.append(ka)
        bob_pts.append(kb)

    name = extractor_for(curve.field, two_source=(mode == "two_source"))
    try:
        if mode == "single":
            alice_key = extract(name, alice_pts[0], alice_pts[0], k)
            bob_key = extract(name, bob_pts[0], bob_pts[0], k)
        else:
            alice_key = extract(name, alice_pts[0], alice_pts[1], k)
            bob_key = extract(name, bob_pts[0], bob_pts[1], k)
    except AbscissaUndefined as exc:
        raise DerivationFailed("K_AB + K'_AB is the point at infinity; choose new secrets") from exc

    transcript = {
        "curve": curve.to_json(),
        "mode": mode,
        "extractor": name,
        "k": k,
        "exchanges": [ex.public() for ex in exchanges],
        "alice_key": _key_json(alice_key),
        "bob_key": _key_json(bob_key),
        "keys_match": alice_key == bob_key,
    }
    return DhSession(curve, mode, k, name, alice_key, bob_key, transcript)


@dataclass(frozen=True)
class PrngState:
    """Counter state: the next output is built from [s]G1 and [t]G2."""

    sub1: Subgroup
    sub2: Subgroup
    s: int
    t: int
    k: int
    step: int = 0
    skipped: int = 0

    def __post_init__(self):
        for name, v, n in (("s", self.s, self.sub1.order), ("t", self.t, self.sub2.order)):
            if not 1 <= v < n:
                raise ValueError(f"{name}={v} outside [1, {n})")


def _advance(v: int, order: int) -> int:
    v = (v + 1) % order
    return v if v else 1


def prng_next(state: PrngState) -> Tuple[Output, PrngState]:
    """Emit one output and return the advanced state; undefined steps are skipped and counted."""
    field = state.sub1.curve.field
    name = extractor_for(field)
    G1, G2 = state.sub1.generator, state.sub2.generator
    s, t, skipped = state.s, state.t, state.skipped
    limit = state.sub1.order * state.sub2.order
    for _ in range(limit + 1):
        P, Q = scalar_mul(s, G1), scalar_mul(t, G2)
        s2, t2 = _advance(s, state.sub1.order), _advance(t, state.sub2.order)
        try:
            out = extract(name, P, Q, state.k)
        except AbscissaUndefined:
            s, t, skipped = s2, t2, skipped + 1
            continue
        return out, replace(state, s=s2, t=t2, step=state.step + 1, skipped=skipped)
    raise RuntimeError("every state on the orbit sums to the point at infinity")


def prng_stream(state: PrngState, count: int) -> Tuple[List[Output], PrngState]:
    outs = []
    for _ in range(count):
        out, state = prng_next(state)
        outs.append(out)
    return outs, state


def output_bits(out: Output, p: int) -> str:
    """Bit rendering of one output: k bits for a BitString, bit_length(p) bits per coefficient."""
    if isinstance(out, BitString):
        return out.bits
    width = p.bit_length()
    return "".join(format(c, f"0{width}b") for c in out.coeffs)


def pack_bits(bits: str) -> bytes:
    """Pack a 0/1 string most-significant-bit first, zero-padding the final byte."""
    if set(bits) - {"0", "1"}:
        raise ValueError("bit string may only contain '0' and '1'")
    pad = (-len(bits)) % 8
    bits = bits + "0" * pad
    return bytes(int(bits[i:i + 8], 2) for i in range(0, len(bits), 8))
