#pragma once

#include <string>
#include <vector>

#include "cherednik/contraform.hpp"

namespace cherednik::cli {

// Closed-form t = 0 character of L(S^i h (x) det^j) at generic c.
CharacterSeries expected_character(K0Ring& ring, IrredLabel tau);
std::vector<int64_t> expected_hilbert(uint32_t p, uint32_t i);

struct CellResult {
  uint32_t p = 0;
  int t = 0;
  IrredLabel tau;
  GenericBackend backend;
  bool ok = false;
  CharacterStatus status = CharacterStatus::Ok;
  std::string detail;  // first mismatch, empty on success
  double seconds = 0;
};

// t = 0: character and Hilbert series against the closed forms.  t = 1: the
// reduced character against the t = 0 closed form, generators only in degrees
// divisible by p.
CellResult verify_cell(uint32_t p, int t, IrredLabel tau, const GenericBackend& backend);

// Cells of one (p, t) table.  Without `slow`: p = 3, 5 except p = 5, t = 1,
// i = 4.  With `slow`: also those and p = 7 (t = 1 only for i <= p - 2).
std::vector<IrredLabel> theorem_cells(uint32_t p, int t, bool slow);
// Exact at p = 3, random with seed 1 otherwise.
GenericBackend profile_backend(uint32_t p);

}  // namespace cherednik::cli
