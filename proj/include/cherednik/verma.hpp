#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cherednik/generic.hpp"
#include "cherednik/group.hpp"
#include "cherednik/k0ring.hpp"
#include "cherednik/linalg.hpp"

namespace cherednik {

// S^i h (x) det^j with basis y_1^{i-b} y_2^b, b = 0..i.
class TauRep {
 public:
  // Throws std::invalid_argument unless p is an odd prime, i <= p-1, j <= p-2.
  TauRep(uint32_t p, uint32_t i, uint32_t j);

  uint32_t prime() const { return p_; }
  IrredLabel label() const { return label_; }
  uint32_t dim() const { return label_.i + 1; }
  // Column b holds the image of the b-th basis vector.
  Matrix<Fp> act(const GroupElement& g) const;
  // Action on the dual basis of tau^*.
  Matrix<Fp> dual_act(const GroupElement& g) const;

 private:
  uint32_t p_;
  IrredLabel label_;
};

// Matrix of S^n of a 2x2 substitution: u_k -> sum_l m(l, k) u_l, on the basis
// u_1^{n-a} u_2^a, a = 0..n.
Matrix<Fp> sym_power_matrix(const GroupElement& m, uint32_t n);

// t in {0, 1} and c_lambda for lambda = 1..p-1 (c[lambda - 1]).
struct ParamSet {
  uint32_t p = 0;
  int t = 0;
  std::vector<ParamPoly> c;

  // c_lambda are the independent variables c_1..c_{p-1}.
  static ParamSet symbolic(uint32_t p, int t);
  const ParamPoly& at(uint32_t lambda) const { return c.at(lambda - 1); }
  // c-bar with cbar_lambda = c_{lambda^{-1}}.
  ParamSet inverse_classes() const;
  void validate() const;
};

// Degree-n piece of S h^* (x) tau: index a * (i+1) + b is x_1^{n-a} x_2^a (x) y_1^{i-b} y_2^b.
size_t piece_dim(const TauRep& tau, uint32_t n);
size_t piece_index(const TauRep& tau, uint32_t a, uint32_t b);
// e.g. "x1^2*x2 (x) y1*y2".
std::string piece_basis_name(const TauRep& tau, uint32_t n, size_t index);
// rho_n(g) on the degree-n piece.
Matrix<Fp> piece_action(const TauRep& tau, uint32_t n, const GroupElement& g);
// Multiplication by x_1^{e} x_2^{d-e}: degree n piece -> degree n + d.
Matrix<Fp> monomial_multiplication(const TauRep& tau, uint32_t n, uint32_t d, uint32_t e);

// D_y = t * derivative - sum_lambda c_lambda * classes[lambda - 1].
struct DunklComponents {
  Matrix<Fp> derivative;
  std::vector<Matrix<Fp>> classes;
};

enum class ModuleSide {
  Verma,  // S h^* (x) tau, operators D_{y_1}, D_{y_2}
  Dual    // S h (x) tau^*, operators D_{x_1}, D_{x_2}
};

// Builds Dunkl components degree by degree.  Divided differences are carried
// from one degree to the next, so increasing calls are incremental.
class DunklFactory {
 public:
  explicit DunklFactory(const TauRep& tau, ModuleSide side = ModuleSide::Verma);
  // Components of D_{y_1}, D_{y_2} (or D_{x_1}, D_{x_2}) : degree n -> n - 1.
  // Throws std::invalid_argument for n = 0.
  std::array<DunklComponents, 2> components(uint32_t n);
  const TauRep& tau() const { return tau_; }

 private:
  void advance();
  TauRep tau_;
  ModuleSide side_;
  uint32_t p_;
  std::vector<Reflection> refl_;
  std::vector<uint32_t> refl_class_;
  std::vector<Matrix<Fp>> refl_tau_;
  uint32_t degree_ = 0;
  // divided difference of each reflection, degree_ -> degree_ - 1, flattened
  std::vector<std::vector<uint32_t>> delta_;
};

Matrix<ParamPoly> assemble(const ParamSet& params, const DunklComponents& comp);
Matrix<Fq> assemble(int t, const std::vector<Fq>& point, const DunklComponents& comp);

// Matrix of D_{y_k} (k = 1, 2) on the degree-n piece.  n >= 1.
Matrix<ParamPoly> dunkl_matrix(const ParamSet& params, const TauRep& tau, int k, uint32_t n);

// Scalar by which sum_{s in C_lambda} s acts on tau; throws std::logic_error
// if the sum is not scalar.
Fp central_sum(uint32_t lambda, const TauRep& tau);
// -sum_lambda c_lambda * central_sum(lambda, tau).
ParamPoly h_constant(const ParamSet& params, const TauRep& tau);

// Homogeneous vectors of one degree, one per row.
struct VermaVectors {
  uint32_t degree = 0;
  Matrix<Fp> rows;
};

enum class SingularFamily {
  DegreeOne,               // whole degree-1 piece, t = 0, i <= p-3
  PthPowers,               // x_k^p (x) v, t = 1, i <= p-3
  DiagonalPair,            // x_1 (x) y_1 f + x_2 (x) y_2 f, f in S^{p-3} h; t = 0, i = p-2
  CornerSquares,           // x_2^2 (x) y_1^{p-2}, x_1^2 (x) y_2^{p-2}; t = 0, i = p-2
  CubicPiece,              // whole degree-3 piece; t = 0, i = p-2
  DiagonalPairFrobenius,   // x_1^p (x) y_1 f + x_2^p (x) y_2 f; t = 1, i = p-2
  CornerSquaresFrobenius,  // x_2^{2p} (x) y_1^{p-2}, x_1^{2p} (x) y_2^{p-2}; t = 1, i = p-2
  CubicFrobenius,          // (S^3 h^*)^p (x) tau; t = 1, i = p-2
  Antidiagonal,            // x_1^{p-1} (x) y_2^{p-1} - x_2^{p-1} (x) y_1^{p-1}; t = 0, i = p-1
  Vk,                      // v_0..v_{p-1}; t = 0, i = p-1
  VkFrobenius              // v'_0..v'_{p-1}; t = 1, i = p-1
};

std::string to_string(SingularFamily f);
SingularFamily parse_singular_family(const std::string& s);
std::vector<SingularFamily> all_singular_families();
uint32_t family_degree(uint32_t p, SingularFamily f);
int family_t(SingularFamily f);
// Families the given one is singular modulo.
std::vector<SingularFamily> family_context(SingularFamily f);
bool family_applies(SingularFamily f, const TauRep& tau);

// Throws std::invalid_argument when the family does not apply to tau.
VermaVectors explicit_singular_family(SingularFamily f, const TauRep& tau);

// sum_d S^d h^* . span(G . generators) in degree n, as an F_p RREF basis.
Matrix<Fp> submodule_span(const TauRep& tau, const std::vector<VermaVectors>& generators, uint32_t n);

// True iff D_{y_k} v lies in the degree-(n-1) span of `modulo` for k = 1, 2
// and every row v.  Exact: as polynomials in c.  Random: at every sample.
bool check_singular(const ParamSet& params, const TauRep& tau, const VermaVectors& v,
                    const std::vector<VermaVectors>& modulo, const GenericBackend& backend);

struct SingularSpace {
  size_t kernel_dimension = 0;     // {v : D_y v in span(modulo)}
  size_t submodule_dimension = 0;  // span(modulo) in degree n
  size_t dimension = 0;            // singular vectors of the quotient
  KernelResult kernel;
};

SingularSpace singular_space(const ParamSet& params, const TauRep& tau, uint32_t n,
                             const std::vector<VermaVectors>& modulo, const GenericBackend& backend);

}  // namespace cherednik
