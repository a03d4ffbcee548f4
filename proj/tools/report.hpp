#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cherednik/contraform.hpp"
#include "json.hpp"

namespace cherednik::cli {

using nlohmann::json;

// `S^i h (x) det^j`, prefixed by the multiplicity when it is not 1.
std::string render_term(IrredLabel l, int64_t mult);
std::string render_class(const K0Element& v);
// `2 + 3z + 2z^2`; `0` for the zero polynomial.
std::string render_hilbert(const std::vector<int64_t>& h);

json class_json(const K0Element& v);
K0Element class_from_json(uint32_t p, const json& terms);
// [{"z":n,"terms":[...]}] over the nonzero coefficients.
json character_json(const CharacterSeries& chi);
CharacterSeries character_from_json(uint32_t p, const json& arr);

json backend_json(const GenericBackend& b);
bool operator==(const GenericBackend& a, const GenericBackend& b);
GenericBackend backend_from_json(const json& j);

struct CharacterReport {
  uint32_t p = 0;
  int t = 0;
  IrredLabel tau;
  std::vector<int64_t> hilbert;
  CharacterSeries character;
  std::optional<std::vector<int64_t>> reduced_hilbert;
  CharacterStatus status = CharacterStatus::Ok;
  GenericBackend backend;
  std::vector<std::vector<size_t>> sample_ranks;
  bool warning = false;
  std::vector<std::string> notes;

  bool operator==(const CharacterReport&) const = default;
};

CharacterReport make_report(const ParamSet& params, const TauRep& tau, const GenericBackend& backend,
                            const IrreducibleCharacter& res);
json to_json(const CharacterReport& r);
CharacterReport report_from_json(const json& j);
std::string render_table(const CharacterReport& r);

}  // namespace cherednik::cli
