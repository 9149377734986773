import pytest

from framecalc import assembly as asm
from framecalc import biframe as bf
from framecalc import congruence as cg
from framecalc.catalog import boolean, chain, corpus_lattices
from framecalc.errors import NotABiframe, NotInjective
from framecalc.order import FrameHom, bits, frame_from_covers, identity_hom, mask_of

THREE = chain(3)
SQUARE = boolean(2)
A = 1
P = SQUARE.labels.index("p")
CORPUS = [F for F in corpus_lattices() if F.size <= 10]


def ids(frames):
    return [F.name for F in frames]


def congruence_biframe(L):
    return asm.congruence_biframe(asm.assemble(L))


def test_congruence_biframe_of_three_chain_is_strictly_zero_dimensional():
    B = congruence_biframe(THREE)
    bf.validate_biframe(B)
    assert bf.is_strictly_zero_dimensional(B)


def test_parts_that_do_not_generate_are_rejected():
    top = SQUARE.top
    part = mask_of([0, P, top])
    B = bf.Biframe(SQUARE, part, part)
    assert bf.biframe_violation(B)[0] == "generation"
    with pytest.raises(NotABiframe):
        bf.validate_biframe(B)


def test_trivial_biframe():
    trivial = frame_from_covers(1, [])
    B = bf.Biframe(trivial, 1, 1)
    bf.validate_biframe(B)
    assert bf.is_strictly_zero_dimensional(B)
    assert len(bf.str0d_biframes_over(trivial)) == 1


def test_coreflection_of_a_congruence_biframe_is_an_isomorphism():
    c = bf.coreflection(congruence_biframe(THREE))
    assert len(set(c.chi.hom.map)) == c.chi.hom.source.size
    assert bf.hom_is_mono(c.chi) and bf.hom_is_extremal_epi(c.chi)


def test_coreflection_over_boolean_square():
    B = bf.Biframe(SQUARE, (1 << 4) - 1, (1 << 4) - 1)
    c = bf.coreflection(B)
    assert sorted(c.chi.hom.map) == [0, 1, 2, 3]


@pytest.mark.parametrize("L", CORPUS, ids=ids(CORPUS))
def test_coreflection_composite_is_a_nucleus(L):
    c = bf.coreflection(congruence_biframe(L))
    chi, r = c.chi.hom.map, c.right_adjoint
    composite = tuple(r[chi[i]] for i in range(len(chi)))
    assert cg.nucleus_violation(c.assembly.frame, composite) is None


@pytest.mark.parametrize("L", CORPUS, ids=ids(CORPUS))
def test_exactly_one_strictly_zero_dimensional_biframe(L):
    found = bf.str0d_biframes_over(L)
    assert len(found) == 1
    assert bf.biframes_isomorphic(found[0], congruence_biframe(L))


def test_chain_of_four_has_one_biframe_of_size_eight():
    (B,) = bf.str0d_biframes_over(chain(4))
    assert B.total.size == 8


def test_clear_elements_of_three_chain():
    X = asm.assemble(THREE)
    B = asm.congruence_biframe(X)
    G = X.frame
    assert set(bits(bf.clear_elements(B))) == {X.delta_map[A], X.nabla_map[A], G.top}
    assert not bf.is_clear_element(B, G.bottom)
    assert bf.biframe_closure(B, X.delta_map[A]) == G.bottom


@pytest.mark.parametrize("L", CORPUS, ids=ids(CORPUS))
def test_closure_commutes_with_the_right_adjoint(L):
    B = congruence_biframe(L)
    c = bf.coreflection(B)
    r = c.right_adjoint
    A1 = asm.congruence_biframe(c.assembly)
    for x in range(B.total.size):
        assert r[bf.biframe_closure(B, x)] == bf.biframe_closure(A1, r[x])
    assert bf.is_clear_element(B, B.total.top)


@pytest.mark.parametrize("L", CORPUS, ids=ids(CORPUS))
def test_both_congruentiality_routes_agree(L):
    assert bf.congruential_routes(congruence_biframe(L)) == (True, True)


def test_identity_is_mono_and_extremal_epi():
    B = congruence_biframe(THREE)
    f = bf.BiframeHom(B, B, identity_hom(B.total))
    assert bf.hom_is_mono(f) and bf.hom_is_extremal_epi(f)


def test_closed_quotient_of_congruence_biframe():
    X = asm.assemble(THREE)
    B = asm.congruence_biframe(X)
    closed = cg.nabla(X.frame, X.nabla_map[A])
    Q, q = bf.quotient_biframe(B, closed)
    assert bf.hom_is_extremal_epi(q) and not bf.hom_is_mono(q)
    R = bf.closed_quotient(B, X.nabla_map[A])
    assert R.total.size == 2 and bf.is_strictly_zero_dimensional(R)
    assert bf.closed_quotient(B, X.frame.bottom).total.size == B.total.size


@pytest.mark.parametrize("L", CORPUS, ids=ids(CORPUS))
def test_closed_quotients_stay_strictly_zero_dimensional(L):
    B = congruence_biframe(L)
    for a in bits(B.part1):
        assert bf.is_strictly_zero_dimensional(bf.closed_quotient(B, a))


@pytest.mark.parametrize("L", CORPUS, ids=ids(CORPUS))
def test_every_congruence_is_smooth(L):
    X = asm.assemble(L)
    assert bf.smooth_congruences(X) == (1 << X.frame.size) - 1


def test_induced_sub_biframes():
    X = asm.assemble(THREE)
    B = bf.induced_sub_biframe(identity_hom(THREE))
    assert bf.biframes_isomorphic(B, asm.congruence_biframe(X))
    iota = FrameHom(THREE, SQUARE, (0, P, SQUARE.top))
    S = bf.induced_sub_biframe(iota)
    assert S.total.size == 4 and bf.is_strictly_zero_dimensional(S)


def test_induced_sub_biframe_needs_an_injection():
    with pytest.raises(NotInjective):
        bf.induced_sub_biframe(FrameHom(THREE, chain(2), (0, 1, 1)))


@pytest.mark.parametrize("L", [F for F in corpus_lattices() if F.size <= 4],
                         ids=ids([F for F in corpus_lattices() if F.size <= 4]))
@pytest.mark.parametrize("M", [F for F in corpus_lattices() if F.size <= 4],
                         ids=ids([F for F in corpus_lattices() if F.size <= 4]))
def test_adjunction_bijection(L, M):
    B = congruence_biframe(M)
    n_frame, n_bi, bijective = bf.adjunction_correspondence(L, B)
    assert bijective and n_frame == n_bi
