import random

import numpy as np
import pytest

from gen import random_clifford_t, random_cnot_rz
from paritysynth.angles import Angle
from paritysynth.circuit import CNOT, H, RZ, Circuit, Gate
from paritysynth.errors import UnsupportedGate
from paritysynth.optimizer import (
    TEMPLATES,
    decompose_mcx,
    decompose_toffoli,
    mcx_circuit,
    optimize,
    stats,
)
from paritysynth.paritynet import synth_phase_circuit
from paritysynth.phasepoly import equivalent_sop, extract_sop
from paritysynth.verify import equivalent_unitary, simulate_classical

T = Angle(1, 8)


def lowered(C, template="tdepth3"):
    return decompose_toffoli(decompose_mcx(C), template)


class TestToffoli:
    @pytest.mark.parametrize("template,cnots", [("tdepth3", 7), ("cnot6", 6)])
    def test_single(self, template, cnots):
        C = Circuit(3, [Gate.toffoli(1, 2, 3)])
        D = decompose_toffoli(C, template)
        s = stats(D)
        assert (s.cnot_count, s.t_count, s.h_count) == (cnots, 7, 2)
        assert equivalent_unitary(C, D, 1e-9)

    def test_default_template_t_depth(self):
        assert stats(Circuit(3, TEMPLATES["tdepth3"])).t_depth == 3

    def test_permuted_wires(self):
        for wires in [(3, 1, 2), (2, 3, 1), (1, 3, 2)]:
            C = Circuit(4, [Gate.toffoli(*wires)])
            assert equivalent_unitary(C, decompose_toffoli(C))

    def test_ccz(self):
        C = Circuit(3, [Gate.ccz(1, 2, 3)])
        D = decompose_toffoli(C)
        assert D.count(H) == 0 and equivalent_unitary(C, D)

    def test_untouched(self):
        C = random_cnot_rz(random.Random(50), 3, 10)
        assert decompose_toffoli(C) == C

    def test_additive(self):
        D = decompose_toffoli(Circuit(3, [Gate.toffoli(1, 2, 3)] * 2))
        assert (D.cnot_count(), stats(D).t_count) == (14, 14)


class TestMCX:
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_sizes(self, k):
        D = decompose_mcx(mcx_circuit(k))
        assert D.n == k + 1 + (k - 2)
        assert len(D) == 2 * k - 3
        s = stats(decompose_toffoli(D))
        assert (s.cnot_count, s.t_count) == (7 * (2 * k - 3), 7 * (2 * k - 3))
        assert D.wire_names()[k + 1 :] == tuple(f"anc{i}" for i in range(1, k - 1))

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_clean_ancilla_semantics(self, k):
        D = decompose_mcx(mcx_circuit(k))
        for x in range(1 << (k + 1)):
            out = simulate_classical(D, x).bits.value
            ctrl = (1 << k) - 1
            expect = x ^ (1 << k) if x & ctrl == ctrl else x
            assert out == expect

    def test_small_arities(self):
        C = Circuit(3, [Gate.mcx([1], 2), Gate.mcx([1, 2], 3)])
        D = decompose_mcx(C)
        assert [g.kind for g in D] == [CNOT, "TOFFOLI"]
        assert D.n == 3

    def test_name_clash(self):
        C = Circuit(4, [Gate.mcx([1, 2, 3], 4)], ("anc1", "b", "c", "d"))
        assert decompose_mcx(C).wire_names() == ("anc1", "b", "c", "d", "anc2")


class TestOptimize:
    def test_single_region_matches_synthesis(self):
        rng = random.Random(51)
        for _ in range(100):
            n = rng.randint(1, 6)
            C = random_cnot_rz(rng, n, 30)
            sop = extract_sop(C)
            assert optimize(C) == synth_phase_circuit(sop.phase, sop.transform)

    def test_single_region_sop_equivalent(self):
        rng = random.Random(52)
        for _ in range(100):
            n = rng.randint(1, 7)
            C = random_cnot_rz(rng, n, 40)
            assert equivalent_sop(extract_sop(C), extract_sop(optimize(C)))

    def test_lambda3_t_count(self):
        out = optimize(lowered(mcx_circuit(3)))
        assert stats(out).t_count == 15

    def test_tt_is_s(self):
        out = optimize(Circuit(1, [Gate.rz(T, 1), Gate.rz(T, 1)]))
        assert out.gates == [Gate.rz(Angle(1, 4), 1)]
        assert stats(out).t_count == 0

    def test_merge_across_hadamard(self):
        C = Circuit(2, [Gate.rz(T, 1), Gate.h(2), Gate.rz(T, 1)])
        out = optimize(C)
        assert stats(out).t_count == 0
        assert equivalent_unitary(C, out)

    def test_affine_hadamard(self):
        C = Circuit(1, [Gate.x(1), Gate.rz(T, 1), Gate.h(1), Gate.rz(T, 1)])
        out = optimize(C)
        assert equivalent_unitary(C, out)

    def test_rejects_toffoli(self):
        with pytest.raises(UnsupportedGate):
            optimize(Circuit(3, [Gate.toffoli(1, 2, 3)]))

    def test_random_properties(self):
        rng = random.Random(53)
        for _ in range(120):
            n = rng.randint(1, 5)
            C = lowered(random_clifford_t(rng, n, rng.randint(1, 40)))
            out = optimize(C, check=True)
            assert equivalent_unitary(C, out)
            assert stats(out).t_count <= stats(C).t_count
            again = optimize(out)
            assert stats(again) == stats(out)


class TestStats:
    def test_empty(self):
        s = stats(Circuit(2))
        assert (s.cnot_count, s.t_count, s.t_depth, s.h_count, s.rz_count, s.total) == (0,) * 6

    def test_decomposed_toffoli(self):
        s = stats(decompose_toffoli(Circuit(3, [Gate.toffoli(1, 2, 3)])))
        assert (s.cnot_count, s.t_count, s.h_count) == (7, 7, 2)

    def test_parallel_t(self):
        s = stats(Circuit(7, [Gate.rz(T, q) for q in range(1, 8)]))
        assert (s.t_count, s.t_depth) == (7, 1)

    def test_depth_through_cnot(self):
        C = Circuit(2, [Gate.rz(T, 1), Gate.cnot(1, 2), Gate.rz(T, 2), Gate.rz(Angle(1, 4), 2)])
        s = stats(C)
        assert (s.t_count, s.t_depth, s.rz_count) == (2, 2, 3)

    def test_t_type_angles(self):
        C = Circuit(1, [Gate.rz(Angle(k, 8), 1) for k in range(8)])
        assert stats(C).t_count == 4

    def test_line(self):
        assert stats(Circuit(1, [Gate.h(1)])).line() == "cnot=0 t=0 tdepth=0 h=1 total=1"
