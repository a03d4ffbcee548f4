#include "theorem.hpp"

#include <chrono>

#include "report.hpp"

namespace cherednik::cli {

CharacterSeries expected_character(K0Ring& ring, IrredLabel tau) {
  const uint32_t p = ring.prime();
  CharacterSeries chi(p);
  if (tau.i + 3 <= p) {
    chi.set(0, K0Element::label(p, tau.i, tau.j));
  } else if (tau.i == p - 2) {
    const int64_t j = tau.j;
    chi.set(0, K0Element::label(p, p - 2, j));
    chi.set(1, K0Element::label(p, p - 1, j - 1));
    chi.set(2, K0Element::label(p, p - 2, j - 1));
  } else {
    // chi_M(z) (1 - z^{p-1}) (1 - z^{p^2-1}), a polynomial of degree p^2 + p - 4
    const size_t top = p * p + p;
    chi = ring.verma_character(tau, top).times_int_poly(one_minus_product({p - 1, p * p - 1})).truncated(top);
    chi.trim();
  }
  return chi;
}

std::vector<int64_t> expected_hilbert(uint32_t p, uint32_t i) {
  if (i + 3 <= p) return {static_cast<int64_t>(i) + 1};
  if (i == p - 2) return {p - 1, p, p - 1};
  // p (1 - z^{p-1}) (1 - z^{p^2-1}) / (1 - z)^2
  std::vector<int64_t> out(p * p + p - 3, 0);
  for (size_t a = 0; a + 1 < p; ++a)
    for (size_t b = 0; b + 1 < p * p; ++b) out[a + b] += p;
  return out;
}

namespace {

std::string first_difference(const CharacterSeries& expected, const CharacterSeries& got) {
  const size_t len = std::max(expected.size(), got.size());
  for (size_t n = 0; n < len; ++n)
    if (expected.coeff(n) != got.coeff(n))
      return "degree " + std::to_string(n) + ": expected " + render_class(expected.coeff(n)) + ", got " +
             render_class(got.coeff(n));
  return {};
}

std::string hilbert_difference(const std::vector<int64_t>& expected, const std::vector<int64_t>& got) {
  const size_t len = std::max(expected.size(), got.size());
  for (size_t n = 0; n < len; ++n) {
    const int64_t e = n < expected.size() ? expected[n] : 0, g = n < got.size() ? got[n] : 0;
    if (e != g)
      return "degree " + std::to_string(n) + ": expected dimension " + std::to_string(e) + ", got " + std::to_string(g);
  }
  return {};
}

}  // namespace

CellResult verify_cell(uint32_t p, int t, IrredLabel tau, const GenericBackend& backend) {
  CellResult out;
  out.p = p;
  out.t = t;
  out.tau = tau;
  out.backend = backend;
  const auto start = std::chrono::steady_clock::now();
  const auto params = ParamSet::symbolic(p, t);
  const TauRep rep(p, tau.i, tau.j);
  K0Ring ring(p);
  const auto res = irreducible_character(params, rep, backend);
  out.status = res.status;
  const auto expected = expected_character(ring, tau);
  const auto expected_h = expected_hilbert(p, tau.i);
  if (res.status != CharacterStatus::Ok) {
    out.detail = "inconclusive";
    for (const auto& n : res.filtration.notes) out.detail += "; " + n;
  } else if (t == 0) {
    out.detail = first_difference(expected, res.character);
    if (out.detail.empty()) out.detail = hilbert_difference(expected_h, res.hilbert);
  } else {
    try {
      const auto red = reduced_character(ring, res.character);
      out.detail = first_difference(expected, red.character);
      if (out.detail.empty()) out.detail = hilbert_difference(expected_h, red.hilbert);
    } catch (const std::runtime_error& e) {
      out.detail = std::string("reduction failed: ") + e.what();
    }
    if (out.detail.empty())
      for (const auto& d : res.filtration.degrees)
        if (d.degree % p && !d.new_generators.is_zero()) {
          out.detail = "degree " + std::to_string(d.degree) + ": new generators in a degree not divisible by p";
          break;
        }
  }
  if (out.detail.empty()) {
    const auto block = block_consistency_check(params, rep, res.filtration);
    if (!block.ok) out.detail = block.violations.front();
  }
  out.ok = out.detail.empty();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<IrredLabel> theorem_cells(uint32_t p, int t, bool slow) {
  std::vector<IrredLabel> out;
  for (uint32_t i = 0; i < p; ++i) {
    const bool top_t1 = t == 1 && i == p - 1;
    bool include = p <= 3 || (p == 5 && !top_t1);
    if (slow) include = p <= 5 || (p == 7 && !top_t1);
    if (!include) continue;
    for (uint32_t j = 0; j + 1 < p; ++j) out.push_back({i, j});
  }
  return out;
}

GenericBackend profile_backend(uint32_t p) { return p == 3 ? GenericBackend::exact() : GenericBackend::random(1); }

}  // namespace cherednik::cli
