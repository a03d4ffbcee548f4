#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cherednik/linalg.hpp"

namespace cherednik {

enum class BackendMode { Exact, Random };

std::string to_string(BackendMode m);
BackendMode parse_backend_mode(const std::string& s);

struct GenericBackend {
  BackendMode mode = BackendMode::Exact;
  unsigned ext_degree = 16;
  unsigned samples = 3;
  uint64_t seed = 1;

  // Throws std::invalid_argument when Random mode has k < 12 or fewer than 3 samples.
  void validate() const;
  static GenericBackend exact() { return {}; }
  static GenericBackend random(uint64_t seed, unsigned samples = 3, unsigned k = 16) {
    return {BackendMode::Random, k, samples, seed};
  }
};

// Independent stream for sample `index` derived from the backend seed.
std::mt19937_64 sample_rng(uint64_t seed, uint64_t index);

// Uniform point of F_{p^k}^{p-1} for the parameters c_1..c_{p-1}.
std::vector<Fq> random_parameter_point(const ExtField& F, std::mt19937_64& rng);

struct RankResult {
  size_t rank = 0;
  std::vector<size_t> sample_ranks;  // Random mode only
  bool warning = false;              // samples disagreed
};

RankResult generic_rank(const Matrix<ParamPoly>& m, const GenericBackend& backend);

struct KernelResult {
  size_t dimension = 0;
  std::optional<Matrix<ParamPoly>> exact_basis;  // fraction-free, rows are kernel vectors
  std::optional<Matrix<Fq>> sample_basis;        // at `sample_point`
  std::vector<Fq> sample_point;
  bool warning = false;
};

KernelResult generic_kernel(const Matrix<ParamPoly>& m, const GenericBackend& backend);

Matrix<Fq> evaluate(const Matrix<ParamPoly>& m, const std::vector<Fq>& point);

}  // namespace cherednik
