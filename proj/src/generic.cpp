#include "cherednik/generic.hpp"

#include <algorithm>

namespace cherednik {

std::string to_string(BackendMode m) { return m == BackendMode::Exact ? "exact" : "random"; }

BackendMode parse_backend_mode(const std::string& s) {
  if (s == "exact") return BackendMode::Exact;
  if (s == "random") return BackendMode::Random;
  throw std::invalid_argument("unknown backend '" + s + "' (expected exact or random)");
}

void GenericBackend::validate() const {
  if (mode == BackendMode::Random) {
    if (ext_degree < 12) throw std::invalid_argument("random backend requires ext_degree >= 12");
    if (samples < 3) throw std::invalid_argument("random backend requires samples >= 3");
    if (ext_degree > kMaxExtDegree) throw std::invalid_argument("ext_degree exceeds 32");
  }
}

std::mt19937_64 sample_rng(uint64_t seed, uint64_t index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(index),
                    static_cast<uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Fq> random_parameter_point(const ExtField& F, std::mt19937_64& rng) {
  std::vector<Fq> pt;
  for (uint32_t l = 1; l < F.prime(); ++l) pt.push_back(F.random(rng));
  return pt;
}

Matrix<Fq> evaluate(const Matrix<ParamPoly>& m, const std::vector<Fq>& point) {
  const ExtField* F = point.at(0).field();
  return map_matrix(m, F->zero(), [&](const ParamPoly& x) { return x.evaluate(point); });
}

namespace {

uint32_t prime_of(const Matrix<ParamPoly>& m) {
  uint32_t p = m.zero().prime();
  if (p == 0) throw std::invalid_argument("matrix has no parameter ring");
  return p;
}

}  // namespace

RankResult generic_rank(const Matrix<ParamPoly>& m, const GenericBackend& backend) {
  backend.validate();
  RankResult res;
  if (backend.mode == BackendMode::Exact) {
    res.rank = bareiss_rank(m);
    return res;
  }
  const ExtField& F = ExtField::get(prime_of(m), backend.ext_degree);
  for (unsigned s = 0; s < backend.samples; ++s) {
    auto rng = sample_rng(backend.seed, s);
    res.sample_ranks.push_back(rank(evaluate(m, random_parameter_point(F, rng))));
  }
  res.rank = *std::max_element(res.sample_ranks.begin(), res.sample_ranks.end());
  for (auto r : res.sample_ranks) res.warning = res.warning || r != res.rank;
  return res;
}

KernelResult generic_kernel(const Matrix<ParamPoly>& m, const GenericBackend& backend) {
  backend.validate();
  KernelResult res;
  if (backend.mode == BackendMode::Exact) {
    res.exact_basis = bareiss_nullspace(m);
    res.dimension = res.exact_basis->rows();
    return res;
  }
  const ExtField& F = ExtField::get(prime_of(m), backend.ext_degree);
  size_t best = SIZE_MAX;
  for (unsigned s = 0; s < backend.samples; ++s) {
    auto rng = sample_rng(backend.seed, s);
    auto pt = random_parameter_point(F, rng);
    auto ker = nullspace(evaluate(m, pt));
    if (best != SIZE_MAX && ker.rows() != best) res.warning = true;
    if (ker.rows() < best) {
      best = ker.rows();
      res.sample_basis = std::move(ker);
      res.sample_point = std::move(pt);
    }
  }
  res.dimension = best;
  return res;
}

}  // namespace cherednik
