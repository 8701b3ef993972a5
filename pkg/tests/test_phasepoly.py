import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from gen import ccz_network, random_cnot_rz, random_invertible, random_phase_poly
from paritysynth.angles import Angle
from paritysynth.circuit import Circuit, Gate
from paritysynth.errors import (
    ArityMismatch,
    ArityTooLarge,
    PreconditionViolated,
    UnsupportedGate,
    ZeroIndicator,
)
from paritysynth.f2linear import BitMatrix, BitVec, parity
from paritysynth.paritynet import synth_phase_circuit
from paritysynth.phasepoly import (
    MultilinearPoly,
    PhasePolynomial,
    SumOverPaths,
    equivalent_sop,
    evaluate,
    extract_sop,
    monomial_fourier,
    multilinear_to_fourier,
    support_minimality_check,
    to_multiplicative,
)
from paritysynth.verify import equivalent_unitary

EIGHTH, THREE_EIGHTHS = Angle(1, 8), Angle(3, 8)


def ccz_poly() -> PhasePolynomial:
    f = PhasePolynomial(3)
    for y in range(1, 8):
        f.add_term(y, THREE_EIGHTHS if bin(y).count("1") == 2 else EIGHTH)
    return f


def interpolate(values, n):
    """Coefficients c_y with k(x) = c_0 + sum_y c_y chi_y(x), by solving the
    evaluation system over the +-1 character basis."""
    N = 1 << n
    H = np.array([[(-1) ** parity(z & x) for x in range(N)] for z in range(N)], dtype=object)
    g = [sum(H[z][x] * Fraction(values[x]) for x in range(N)) / N for z in range(N)]
    out = {0: g[0] + sum(g[1:])}
    for y in range(1, N):
        out[y] = -2 * g[y]
    return {y: c for y, c in out.items() if c}


def random_multilinear(rng, n, terms, lo=-5, hi=5):
    return MultilinearPoly(n, {rng.randrange(1 << n): rng.randint(lo, hi) for _ in range(terms)})


class TestAngle:
    def test_normalized(self):
        assert Angle(9, 8) == Angle(1, 8)
        assert Angle(-1, 8) == Angle(7, 8)
        assert Angle(2, 16).denominator == 8

    def test_dyadic_and_t_type(self):
        assert Angle(3, 8).is_dyadic() and Angle(3, 8).is_t_type()
        assert not Angle(1, 3).is_dyadic()
        assert not Angle(1, 4).is_t_type()

    def test_arithmetic(self):
        assert Angle(1, 8) + Angle(7, 8) == Angle(0)
        assert not (Angle(1, 2) + Angle(1, 2))
        assert -Angle(1, 8) == Angle(7, 8)
        assert Angle(1, 8) * 2 == Angle(1, 4)


class TestExtract:
    def test_ccz_circuit(self):
        sop = extract_sop(ccz_network())
        assert sop.phase == ccz_poly()
        assert sop.transform == BitMatrix.identity(3)

    def test_empty(self):
        sop = extract_sop(Circuit(2))
        assert len(sop.phase) == 0 and sop.transform == BitMatrix.identity(2)

    def test_rotations_on_distinct_parities_do_not_cancel(self):
        # the second rotation sees x2 again, not x1+x2
        C = Circuit(2, [Gate.cnot(1, 2), Gate.rz(Angle(1, 8), 2), Gate.cnot(1, 2), Gate.rz(Angle(7, 8), 2)])
        sop = extract_sop(C)
        assert sop.phase == PhasePolynomial(2, {"11": Angle(1, 8), "01": Angle(7, 8)})
        assert sop.transform == BitMatrix.identity(2)

    def test_cancellation(self):
        C = Circuit(2, [Gate.cnot(1, 2), Gate.rz(Angle(1, 8), 2), Gate.rz(Angle(7, 8), 2), Gate.cnot(1, 2)])
        sop = extract_sop(C)
        assert len(sop.phase) == 0 and sop.transform == BitMatrix.identity(2)

    def test_rejects_h_and_not(self):
        for g in (Gate.h(1), Gate.x(1)):
            with pytest.raises(UnsupportedGate):
                extract_sop(Circuit(2, [g]))

    def test_canceling_pair_invariance(self):
        rng = random.Random(10)
        for _ in range(200):
            n = rng.randint(2, 6)
            C = random_cnot_rz(rng, n, 25)
            c, t = rng.sample(range(1, n + 1), 2)
            pos = rng.randint(0, len(C))
            gates = C.gates[:pos] + [Gate.cnot(c, t), Gate.cnot(c, t)] + C.gates[pos:]
            a, b = extract_sop(C), extract_sop(Circuit(n, gates))
            assert a.phase == b.phase and a.transform == b.transform


class TestEvaluate:
    def test_ccz_values(self):
        f = ccz_poly()
        assert evaluate(f, BitVec("111")) == Fraction(1, 2)
        assert evaluate(f, BitVec("000")) == 0
        assert evaluate(f, BitVec("110")) == 1

    def test_zero_point(self):
        rng = random.Random(11)
        for _ in range(20):
            assert evaluate(random_phase_poly(rng, 4, 6), 0) == 0

    def test_arity(self):
        with pytest.raises(ArityMismatch):
            evaluate(ccz_poly(), BitVec("11"))


def sop(n, terms, A=None):
    return SumOverPaths(PhasePolynomial(n, terms), A or BitMatrix.identity(n))


class TestEquivalentSop:
    def test_integer_valued_difference(self):
        half = Fraction(1, 2)
        assert equivalent_sop(sop(2, {"11": half}), sop(2, {"10": half, "01": half}))

    def test_reflexive(self):
        s = sop(3, {"101": Fraction(1, 3)})
        assert equivalent_sop(s, s)

    def test_thirds_differ(self):
        third = Fraction(1, 3)
        assert not equivalent_sop(sop(2, {"10": third}), sop(2, {"11": third}))

    def test_transform_mismatch(self):
        assert not equivalent_sop(sop(2, {}), sop(2, {}, BitMatrix.elementary(2, 1, 2)))

    def test_errors(self):
        with pytest.raises(ArityMismatch):
            equivalent_sop(sop(2, {}), sop(3, {}))
        with pytest.raises(ArityTooLarge):
            equivalent_sop(sop(21, {}), sop(21, {}))

    def test_agrees_with_pointwise_oracle(self):
        rng = random.Random(12)
        for trial in range(300):
            n = rng.randint(1, 6)
            f = random_phase_poly(rng, n, rng.randint(0, 6), denominators=(2, 4, 3))
            if trial % 2:
                k = multilinear_to_fourier(random_multilinear(rng, n, 4)).to_phase_polynomial()
                g = f + k
            else:
                g = random_phase_poly(rng, n, rng.randint(0, 6), denominators=(2, 4, 3))
            truth = all((evaluate(f, x) - evaluate(g, x)).denominator == 1 for x in range(1 << n))
            I = BitMatrix.identity(n)
            assert equivalent_sop(SumOverPaths(f, I), SumOverPaths(g, I)) == truth
            if trial % 2:
                assert truth

    def test_equivalent_forms_give_equal_unitaries(self):
        rng = random.Random(13)
        for _ in range(40):
            n = rng.randint(2, 5)
            f = random_phase_poly(rng, n, 5)
            g = f + multilinear_to_fourier(random_multilinear(rng, n, 3)).to_phase_polynomial()
            A = random_invertible(rng, n)
            assert equivalent_sop(SumOverPaths(f, A), SumOverPaths(g, A))
            assert equivalent_unitary(synth_phase_circuit(f, A), synth_phase_circuit(g, A))


class TestMonomial:
    def test_single_variable(self):
        assert monomial_fourier(BitVec("100")).coeffs == {1: Fraction(1)}

    def test_pair(self):
        assert monomial_fourier(BitVec("11")).coeffs == {1: Fraction(1, 2), 2: Fraction(1, 2), 3: Fraction(-1, 2)}

    def test_triple_pointwise(self):
        m = monomial_fourier(BitVec("111"))
        for x in range(8):
            assert m.evaluate(x) == (1 if x == 7 else 0)

    def test_zero(self):
        with pytest.raises(ZeroIndicator):
            monomial_fourier(BitVec("000"))

    def test_term_count_and_values(self):
        for n in range(1, 7):
            for y in range(1, 1 << n):
                m = monomial_fourier(BitVec.from_int(y, n))
                assert len(m) == 2 ** bin(y).count("1") - 1
                for x in range(1 << n):
                    assert m.evaluate(x) == (1 if x & y == y else 0)


class TestMultilinear:
    def test_pair(self):
        F = multilinear_to_fourier(MultilinearPoly(2, {"11": 1}))
        assert F.coeffs == {1: Fraction(1, 2), 2: Fraction(1, 2), 3: Fraction(-1, 2)}
        f = F.to_phase_polynomial()
        assert f.coefficient("11") == Angle(1, 2)

    def test_zero(self):
        assert len(multilinear_to_fourier(MultilinearPoly(3))) == 0

    def test_against_interpolation(self):
        k = MultilinearPoly(3, {"111": 3, "010": 1})
        F = multilinear_to_fourier(k)
        assert F.coeffs == interpolate([k.evaluate(x) for x in range(8)], 3)

    def test_random_interpolation(self):
        rng = random.Random(14)
        for _ in range(60):
            n = rng.randint(1, 4)
            k = random_multilinear(rng, n, 5)
            assert multilinear_to_fourier(k).coeffs == interpolate([k.evaluate(x) for x in range(1 << n)], n)

    def test_dyadic_and_pointwise(self):
        rng = random.Random(15)
        for _ in range(200):
            n = rng.randint(1, 10)
            k = random_multilinear(rng, n, 6)
            F = multilinear_to_fourier(k)
            assert F.is_dyadic()
            xs = range(1 << n) if n <= 6 else [rng.randrange(1 << n) for _ in range(64)]
            assert all(F.evaluate(x) == k.evaluate(x) for x in xs)


class TestSupportMinimality:
    def test_examples(self):
        third = PhasePolynomial(2, {"10": Fraction(1, 3)})
        assert support_minimality_check(third, MultilinearPoly(2, {"11": 1}))
        assert support_minimality_check(third, MultilinearPoly(2))

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            support_minimality_check(PhasePolynomial(1, {"1": Fraction(1, 8)}), MultilinearPoly(1))

    def test_thirds_construction_random(self):
        rng = random.Random(16)
        for _ in range(1000):
            n = rng.randint(1, 6)
            S = rng.sample(range(1, 1 << n), rng.randint(1, min(6, (1 << n) - 1)))
            f = PhasePolynomial(n, {y: Fraction(rng.choice([1, 2, 1, 5]), rng.choice([3, 3, 6, 5])) for y in S})
            assert support_minimality_check(f, random_multilinear(rng, n, 4, -9, 9))


class TestMultiplicative:
    @staticmethod
    def mult_eval(g, x):
        return sum(c * (-1) ** parity(y.value & x) for y, c in g.items())

    def test_zero(self):
        assert to_multiplicative(PhasePolynomial(2)) == {BitVec("00"): 0}

    def test_half_x1(self):
        g = to_multiplicative(PhasePolynomial(1, {"1": Fraction(1, 2)}))
        assert g == {BitVec("0"): Fraction(1, 4), BitVec("1"): Fraction(-1, 4)}

    def test_ccz_identity(self):
        f = ccz_poly()
        g = to_multiplicative(f)
        for x in range(8):
            assert self.mult_eval(g, x) == evaluate(f, x)

    def test_random_identity(self):
        rng = random.Random(17)
        for _ in range(100):
            n = rng.randint(1, 7)
            f = random_phase_poly(rng, n, 6)
            g = to_multiplicative(f)
            assert all(self.mult_eval(g, x) == evaluate(f, x) for x in range(1 << n))


def test_phase_poly_arithmetic():
    f = ccz_poly()
    assert len(f - f) == 0
    assert (f + f).coefficient("111") == Angle(1, 4)
    assert (-f).coefficient("110") == Angle(5, 8)
    assert [str(y) for y in f.support()] == [str(BitVec.from_int(y, 3)) for y in range(1, 8)]
    assert all(isinstance(a, Angle) for _, a in f.items())
    assert list(itertools.islice(f.int_items(), 1))[0] == (1, EIGHTH)
