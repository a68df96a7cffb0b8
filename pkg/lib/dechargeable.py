from .errors import *
from .trunc_algebra import *

from dataclasses import dataclass
from typing_extensions import Self
import logging
import math


_LOG = logging.getLogger(__name__)


def _divided_power(ring: TruncRing, h: int, alpha: int, beta: int) -> TruncElement:
    # t^alpha (x1 - t)^h / x1^beta: the numerator is expanded with room for
    # x-degrees up to s + beta, divided, and only then projected into the ring
    wide = TruncRing(1, ring.q, ring.s + beta, ring.prime)
    numerator = {}
    for k in range(h + 1):
        numerator[(h - k + alpha, (k,))] = math.comb(h, k) * (-1) ** (h - k)
    return TruncElement.truncated(wide, numerator).divide_x1(beta).restrict(ring)


# DechargeableIdeal is an ideal of A(q, s, 1) presented by
#   e1 = (x1 - t)^h / x1^beta1,
#   ei = t^alpha_i (x1 - t)^h / x1^beta_i  for i >= 2,
# with height H = h - beta1. alphas[k] and betas[k + 1] describe e_{k+2}.
@dataclass(frozen=True)
class DechargeableIdeal:
    ring: TruncRing
    h: int
    betas: tuple[int, ...]
    alphas: tuple[int, ...] = ()

    @classmethod
    def translated(cls, ring: TruncRing, h: int) -> Self:
        """
        ((x1 - t)^h), the n = 1 translated ideal J(E_h, q, s), of height h.
        """
        return cls(ring, h, (0,))

    @property
    def height(self) -> int:
        return self.h - self.betas[0]

    def generators(self) -> list[TruncElement]:
        result = [_divided_power(self.ring, self.h, 0, self.betas[0])]
        for alpha, beta in zip(self.alphas, self.betas[1:]):
            result.append(_divided_power(self.ring, self.h, alpha, beta))
        return result

    def ideal(self) -> TruncIdeal:
        return TruncIdeal.generated_by(self.ring, self.generators())

    def validate(self):
        ring = self.ring
        if ring.n != 1:
            raise NotDechargeable(f"dechargeable ideals live in A(q,s,1), got n={ring.n}")
        if len(self.betas) != len(self.alphas) + 1:
            raise NotDechargeable(
                f"{len(self.betas)} betas do not match {len(self.alphas)} alphas")
        if self.height < 0:
            raise NotDechargeable(f"negative height {self.height}")
        if ring.q > self.height and self.betas[0] != 0:
            raise NotDechargeable(
                f"beta1 must vanish when q={ring.q} exceeds the height {self.height}")
        if any(alpha < 1 for alpha in self.alphas):
            raise NotDechargeable(f"alphas must be >= 1, got {list(self.alphas)}")

        # r_qp(e_i) divisible by x1^(q-p+1) for every p <= q amounts to:
        # each term t^b x1^a of e_i has a >= q - b
        for i, e in enumerate(self.generators()[1:], start=2):
            for (b, (a,)) in e.coeffs:
                if a < ring.q - b:
                    raise NotDechargeable(
                        f"e{i} has term t^{b} x1^{a}, needs x1-exponent >= {ring.q - b}")


def dechargeable_colon(ideal: DechargeableIdeal) -> list[TruncElement]:
    """
    Closed form of (I : x1) for a dechargeable ideal I of height H:
      q <= H:  (x1^(s-1), e1/x1, e2/x1, ..., er/x1)
      q > H:   (x1^(s-1), e1, t^(q-h) e1/x1, e2/x1, ..., er/x1)
    """
    ideal.validate()
    ring = ideal.ring
    top = TruncElement.monomial(ring, 0, (ring.s - 1,))

    tail = [_divided_power(ring, ideal.h, alpha, beta + 1)
            for alpha, beta in zip(ideal.alphas, ideal.betas[1:])]

    if ring.q <= ideal.height:
        head = [_divided_power(ring, ideal.h, 0, ideal.betas[0] + 1)]
    else:
        head = [_divided_power(ring, ideal.h, 0, ideal.betas[0]),
                _divided_power(ring, ideal.h, ring.q - ideal.h, ideal.betas[0] + 1)]

    return [top] + head + tail


def dechargeable_restrict_colon(ideal: DechargeableIdeal, q: int, s: int) -> DechargeableIdeal:
    """
    Dechargeable presentation of r(I : x1) in A(q, s, 1), for q < q0 and
    s < s0. Its height is H - 1 when q0 <= H and stays H otherwise.
    """
    ideal.validate()
    ring = ideal.ring
    if not (0 < q < ring.q and 0 < s < ring.s):
        raise BadTruncation(
            f"restriction of the colon needs q < {ring.q} and s < {ring.s}, got q={q}, s={s}")

    target = TruncRing(1, q, s, ring.prime)
    shifted = tuple(beta + 1 for beta in ideal.betas[1:])
    if ring.q <= ideal.height:
        result = DechargeableIdeal(
            target, ideal.h, (ideal.betas[0] + 1,) + shifted, ideal.alphas)
    else:
        result = DechargeableIdeal(
            target, ideal.h, (ideal.betas[0],) + shifted + (1,),
            ideal.alphas + (ring.q - ideal.h,))

    _LOG.debug(f"restricted colon A({ring.q},{ring.s}) -> A({q},{s}): "
               f"height {ideal.height} -> {result.height}, {len(result.betas)} generators")
    result.validate()
    return result
