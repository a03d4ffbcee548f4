#include <random>

#include "cherednik/contraform.hpp"
#include "cherednik/group.hpp"
#include "doctest.h"

using namespace cherednik;

namespace {

K0Element lbl(uint32_t p, uint32_t i, int64_t j) { return K0Element::label(p, i, j); }

// Trace of g on the G-stable span of `basis`, compared with the Brauer
// character of `cls` at every p-regular element.
bool traces_match(const TauRep& tau, uint32_t n, Matrix<Fp> basis, const K0Element& cls) {
  const uint32_t p = tau.prime();
  const auto piv = rref(basis);
  const auto& F = ExtField::get(p, 2);
  for (const auto& g : all_elements(p)) {
    if (g.order() % p == 0) continue;
    const auto image = basis * piece_action(tau, n, g).transpose();
    Fp tr(0, p);
    for (size_t l = 0; l < piv.size(); ++l) tr += image(l, piv[l]);
    if (F.from_fp(tr) != brauer_char(cls, g)) return false;
  }
  return true;
}

std::vector<size_t> ranks(const KernelFiltration& f) {
  std::vector<size_t> out;
  for (const auto& d : f.degrees) out.push_back(d.rank);
  return out;
}

std::vector<int64_t> closed_form_top_row(uint32_t p) {
  // p (1 - z^{p-1}) (1 - z^{p^2-1}) / (1 - z)^2
  std::vector<int64_t> a(p - 1, 1), b(p * p - 1, 1), out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += static_cast<int64_t>(p);
  return out;
}

}  // namespace

TEST_CASE("degree caps") {
  CHECK(degree_cap(3, 0) == 12);
  CHECK(degree_cap(3, 1) == 40);
  CHECK(degree_cap(5, 0) == 42);
}

TEST_CASE("subspace and quotient classes agree with traces and with the piece") {
  K0Ring ring3(3), ring5(5);
  for (uint32_t p : {3u, 5u}) {
    K0Ring& ring = p == 3 ? ring3 : ring5;
    for (uint32_t i = 0; i < p; ++i)
      for (uint32_t j : {0u, 1u}) {
        const TauRep tau(p, i, j);
        const auto verma = ring.verma_character({i, j}, 4);
        for (uint32_t n = 0; n <= 4; ++n) {
          const auto whole = Matrix<Fp>::identity(piece_dim(tau, n), Fp(0, p));
          CHECK(subspace_class(tau, n, whole) == verma.coeff(n));
          CHECK(quotient_class(tau, n, whole) == verma.coeff(n));
          CHECK(subspace_class(tau, n, Matrix<Fp>(0, whole.cols(), Fp(0, p))).is_zero());
          CHECK(traces_match(tau, n, whole, verma.coeff(n)));
        }
      }
  }
  // Proper G-stable subspaces: spans of explicit singular families.
  for (uint32_t p : {3u, 5u})
    for (auto fam : all_singular_families()) {
      for (uint32_t i = 0; i < p; ++i) {
        const TauRep tau(p, i, 1);
        if (!family_applies(fam, tau)) continue;
        const auto v = explicit_singular_family(fam, tau);
        if (v.degree > 12) continue;
        const auto span = submodule_span(tau, {v}, v.degree);
        const auto cls = subspace_class(tau, v.degree, span);
        CAPTURE(to_string(fam));
        CHECK(cls.dimension() == static_cast<int64_t>(span.rows()));
        CHECK(cls.is_nonnegative());
        CHECK(traces_match(tau, v.degree, span, cls));
        // complement: functionals cutting out the span
        const auto pi = nullspace(span);
        K0Ring ring(p);
        CHECK(cls + quotient_class(tau, v.degree, pi) ==
              ring.verma_character(tau.label(), v.degree).coeff(v.degree));
      }
    }
}

TEST_CASE("classes over an extension field match F_p classes") {
  const TauRep tau(3, 1, 0);
  const auto v = explicit_singular_family(SingularFamily::CornerSquares, tau);
  const auto span = submodule_span(tau, {v}, 2);
  const auto& F = ExtField::get(3, 16);
  const auto lifted = map_matrix(span, F.zero(), [&](const Fp& x) { return F.from_fp(x); });
  CHECK(subspace_class(tau, 2, lifted) == subspace_class(tau, 2, span));
  CHECK(quotient_class(tau, 2, nullspace(lifted)) == quotient_class(tau, 2, nullspace(span)));
}

TEST_CASE("p = 3, tau = (1, 0), t = 0") {
  const auto params = ParamSet::symbolic(3, 0);
  const TauRep tau(3, 1, 0);
  const auto res = irreducible_character(params, tau, GenericBackend::exact());
  CHECK(res.status == CharacterStatus::Ok);
  CHECK(ranks(res.filtration) == std::vector<size_t>{2, 3, 2, 0});
  CHECK(res.hilbert == std::vector<int64_t>{2, 3, 2});
  CharacterSeries expected(3);
  expected.set(0, lbl(3, 1, 0));
  expected.set(1, lbl(3, 2, 1));
  expected.set(2, lbl(3, 1, 1));
  CHECK(res.character == expected);
  for (const auto& d : res.filtration.degrees) CHECK(d.rational);
  const auto block = block_consistency_check(params, tau, res.filtration);
  CHECK(block.ok);
  CHECK(block.generators.size() >= 1);
}

TEST_CASE("rows below p - 2 at t = 0 are tau in degree 0") {
  for (uint32_t p : {3u, 5u}) {
    const auto params = ParamSet::symbolic(p, 0);
    for (uint32_t i = 0; i + 3 <= p; ++i)
      for (uint32_t j = 0; j + 1 < p; ++j) {
        const TauRep tau(p, i, j);
        const auto res = irreducible_character(params, tau, GenericBackend::exact());
        CHECK(res.status == CharacterStatus::Ok);
        CHECK(res.hilbert == std::vector<int64_t>{i + 1});
        CHECK(res.character.degree() == 0);
        CHECK(res.character.coeff(0) == lbl(p, i, j));
        CHECK(ranks(res.filtration) == std::vector<size_t>{i + 1, 0});
      }
  }
}

TEST_CASE("p = 5, tau = (1, 0): the whole degree-1 piece is singular") {
  const auto params = ParamSet::symbolic(5, 0);
  const auto res = kernel_filtration(params, TauRep(5, 1, 0), GenericBackend::exact());
  REQUIRE(res.degrees.size() == 2);
  CHECK(res.degrees[1].rank == 0);
  CHECK(res.degrees[1].kernel.rows() == piece_dim(TauRep(5, 1, 0), 1));
}

TEST_CASE("p = 3, tau = (2, j), t = 0 has the top-row Hilbert series") {
  const auto params = ParamSet::symbolic(3, 0);
  for (uint32_t j : {0u, 1u}) {
    const TauRep tau(3, 2, j);
    const auto res = irreducible_character(params, tau, GenericBackend::exact());
    CHECK(res.status == CharacterStatus::Ok);
    CHECK(res.hilbert == closed_form_top_row(3));
    CHECK(res.character.total_dimension() == 48);
    const auto block = block_consistency_check(params, tau, res.filtration);
    CHECK(block.ok);
    for (const auto& [n, g] : block.generators)
      for (const auto& [sigma, m] : g.terms()) CHECK(sigma == IrredLabel{2, j});
  }
}

TEST_CASE("determinant twists shift the character") {
  const auto params = ParamSet::symbolic(3, 0);
  for (uint32_t i = 0; i < 3; ++i) {
    const auto base = irreducible_character(params, TauRep(3, i, 0), GenericBackend::exact());
    const auto twisted = irreducible_character(params, TauRep(3, i, 1), GenericBackend::exact());
    CHECK(base.hilbert == twisted.hilbert);
    for (size_t n = 0; n < base.character.size(); ++n)
      CHECK(base.character.coeff(n).twist(1) == twisted.character.coeff(n));
  }
}

TEST_CASE("random backend agrees with exact at p = 3") {
  const auto params = ParamSet::symbolic(3, 0);
  for (uint32_t i = 0; i < 3; ++i) {
    const TauRep tau(3, i, 1);
    const auto ex = irreducible_character(params, tau, GenericBackend::exact());
    const auto rd = irreducible_character(params, tau, GenericBackend::random(7));
    CHECK(rd.status == CharacterStatus::Ok);
    CHECK_FALSE(rd.filtration.warning);
    CHECK(rd.filtration.sample_ranks.size() == 3);
    CHECK(ex.character == rd.character);
  }
}

TEST_CASE("max_degree truncation is inconclusive") {
  const auto params = ParamSet::symbolic(3, 0);
  const auto res = kernel_filtration(params, TauRep(3, 2, 0), GenericBackend::exact(), 3);
  CHECK(res.status == CharacterStatus::Inconclusive);
  CHECK(res.degrees.size() == 4);
}

TEST_CASE("reduced characters") {
  K0Ring ring(3);
  CHECK(reduced_character(ring, ring.restricted_sym_character()).character.coeff(0) == ring.trivial());
  const auto p1 = ParamSet::symbolic(3, 1);
  {
    const auto res = irreducible_character(p1, TauRep(3, 1, 0), GenericBackend::exact());
    CHECK(res.status == CharacterStatus::Ok);
    const auto red = reduced_character(ring, res.character);
    CHECK(red.hilbert == std::vector<int64_t>{2, 3, 2});
    const auto block = block_consistency_check(p1, TauRep(3, 1, 0), res.filtration);
    CHECK(block.ok);
  }
  {
    const auto res = irreducible_character(p1, TauRep(3, 0, 0), GenericBackend::exact());
    const auto red = reduced_character(ring, res.character);
    CHECK(red.hilbert == std::vector<int64_t>{1});
    CHECK(red.character.coeff(0) == ring.trivial());
    const auto block = block_consistency_check(p1, TauRep(3, 0, 0), res.filtration);
    CHECK(block.ok);
    for (const auto& [n, g] : block.generators) CHECK(n % 3 == 0);
  }
  CharacterSeries bad(3);
  bad.set(0, ring.trivial());
  bad.set(1, ring.trivial());
  CHECK_THROWS_AS(reduced_character(ring, bad), std::runtime_error);
  CHECK_THROWS_AS(reduced_character(ring, CharacterSeries(3)), std::runtime_error);
}

TEST_CASE("Gram matrices of the contravariant form") {
  for (int t : {0, 1}) {
    const auto params = ParamSet::symbolic(3, t);
    for (uint32_t i = 0; i < 3; ++i) {
      const TauRep tau(3, i, 1);
      const auto filt = kernel_filtration(params, tau, GenericBackend::exact(), 4);
      const auto Bs = form_matrices(params, tau, 0);
      CHECK(Bs.front() == Matrix<ParamPoly>::identity(tau.dim(), ParamPoly(3)));
      for (uint32_t n = 0; n <= 4; ++n) {
        CAPTURE(t);
        CAPTURE(i);
        CAPTURE(n);
        const auto x = form_matrix_crosscheck(params, tau, filt, n);
        CHECK(x.rank_matches);
        CHECK(x.radical_matches);
        CHECK(x.contravariant);
      }
    }
  }
}
