#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cherednik/generic.hpp"
#include "cherednik/k0ring.hpp"
#include "cherednik/linalg.hpp"
#include "cherednik/verma.hpp"

namespace cherednik {

enum class CharacterStatus { Ok, Inconclusive };

std::string to_string(CharacterStatus s);

// Last degree in which the baby Verma module, hence L, can be nonzero.
uint32_t degree_cap(uint32_t p, int t);

// K_0 class of a G-stable subspace of the degree-n piece spanned by the rows
// of `basis`, read off from split- and non-split-torus eigenvalues.
template <class S>
K0Element subspace_class(const TauRep& tau, uint32_t n, const Matrix<S>& basis);
// Class of the quotient of the degree-n piece by the common kernel of the
// rows of `functionals` (a G-stable subspace).
template <class S>
K0Element quotient_class(const TauRep& tau, uint32_t n, const Matrix<S>& functionals);

struct FiltrationDegree {
  uint32_t degree = 0;
  size_t piece_dim = 0;
  size_t rank = 0;           // dim L_n = dim M_n - dim K_n
  bool rational = true;      // K_n has a basis over F_p
  Matrix<Fp> kernel;         // RREF basis of K_n when rational
  Matrix<Fq> sample_kernel;  // basis of K_n at the sample point otherwise
  K0Element quotient;        // [M_n / K_n]
  size_t generated_dim = 0;  // dim of x_1 K_{n-1} + x_2 K_{n-1}
  K0Element new_generators;  // [K_n / (x_1 K_{n-1} + x_2 K_{n-1})]
};

// K_n = {f : D_{y_1} f, D_{y_2} f in K_{n-1}}, K_0 = 0: the radical of the
// contravariant form in degree n.
//
// Exact backend: each rank is certified.  While K_{n-1} is defined over F_p
// the next step is certified by a full-rank evaluation or by fraction-free
// elimination; once K_n depends on c, later degrees are computed at one
// sample point and certified against the submodule generated by earlier
// kernels and by vectors killed by every Dunkl component.  A step that cannot
// be certified ends the run as Inconclusive.
//
// Random backend: one filtration per sample, ranks compared across samples.
struct KernelFiltration {
  uint32_t p = 0;
  int t = 0;
  IrredLabel tau;
  CharacterStatus status = CharacterStatus::Ok;
  std::vector<FiltrationDegree> degrees;  // from degree 0
  std::vector<Fq> sample_point;           // parameter variables at the sample; empty if never needed
  std::vector<std::vector<size_t>> sample_ranks;  // random backend, per sample
  bool warning = false;                   // samples disagreed
  std::vector<std::string> notes;
};

KernelFiltration kernel_filtration(const ParamSet& params, const TauRep& tau, const GenericBackend& backend,
                                   std::optional<uint32_t> max_degree = std::nullopt);

struct IrreducibleCharacter {
  CharacterSeries character;
  std::vector<int64_t> hilbert;
  CharacterStatus status = CharacterStatus::Ok;
  KernelFiltration filtration;
};

IrreducibleCharacter irreducible_character(const ParamSet& params, const TauRep& tau, const GenericBackend& backend,
                                           std::optional<uint32_t> max_degree = std::nullopt);

struct ReducedCharacter {
  CharacterSeries character;  // H with chi(z) = chi_{S^(p) h^*}(z) H(z^p)
  std::vector<int64_t> hilbert;
};

// Throws std::runtime_error when the division is inexact, when H has terms in
// degrees not divisible by p, or when h(1) lies outside [1, |G|].
ReducedCharacter reduced_character(K0Ring& ring, const CharacterSeries& chi);

// Gram matrices B_0..B_n of the contravariant pairing between
// S h^* (x) tau at c and S h (x) tau^* at cbar (cbar_lambda = c_{lambda^{-1}}).
// Rows index the Verma piece, columns the dual piece.
std::vector<Matrix<ParamPoly>> form_matrices(const ParamSet& params, const TauRep& tau, uint32_t n);

struct FormCrosscheck {
  size_t rank = 0;
  bool rank_matches = false;     // rank B_n = rank_n of the filtration
  bool radical_matches = false;  // K_n B_n = 0, so with equal ranks the radical is K_n
  bool contravariant = false;    // B_n(f, y h) = B_{n-1}(D_y f, h)
  bool ok() const { return rank_matches && radical_matches && contravariant; }
};

FormCrosscheck form_matrix_crosscheck(const ParamSet& params, const TauRep& tau, const KernelFiltration& filtration,
                                      uint32_t n);

struct BlockReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<std::pair<uint32_t, K0Element>> generators;  // degree, class of new generators
};

// New kernel generators in degree n must have h_c(sigma) = h_c(tau) + t n for
// every constituent sigma; at t = 1 they occur only in degrees divisible by p;
// for tau = (p-1, j) every constituent is (p-1, j).
BlockReport block_consistency_check(const ParamSet& params, const TauRep& tau, const KernelFiltration& filtration);

}  // namespace cherednik
