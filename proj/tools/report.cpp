#include "report.hpp"

#include <sstream>
#include <stdexcept>

namespace cherednik::cli {

std::string render_term(IrredLabel l, int64_t mult) {
  std::string s = "S^" + std::to_string(l.i) + " h (x) det^" + std::to_string(l.j);
  return mult == 1 ? s : std::to_string(mult) + " " + s;
}

std::string render_class(const K0Element& v) {
  std::string out;
  for (const auto& [l, m] : v.terms()) {
    if (!out.empty()) out += " + ";
    out += render_term(l, m);
  }
  return out.empty() ? "0" : out;
}

std::string render_hilbert(const std::vector<int64_t>& h) {
  std::string out;
  for (size_t n = 0; n < h.size(); ++n) {
    if (h[n] == 0) continue;
    int64_t c = h[n];
    if (!out.empty()) {
      out += c < 0 ? " - " : " + ";
      c = c < 0 ? -c : c;
    }
    std::string mono = n == 0 ? "" : n == 1 ? "z" : "z^" + std::to_string(n);
    if (n == 0 || c != 1) mono = (c == -1 && n ? "-" : std::to_string(c)) + mono;
    out += mono;
  }
  return out.empty() ? "0" : out;
}

json class_json(const K0Element& v) {
  json arr = json::array();
  for (const auto& [l, m] : v.terms()) arr.push_back({{"i", l.i}, {"j", l.j}, {"mult", m}});
  return arr;
}

K0Element class_from_json(uint32_t p, const json& terms) {
  K0Element v(p);
  for (const auto& t : terms) v.mult(t.at("i").get<uint32_t>(), t.at("j").get<uint32_t>()) += t.at("mult").get<int64_t>();
  return v;
}

json character_json(const CharacterSeries& chi) {
  json arr = json::array();
  for (size_t n = 0; n < chi.size(); ++n) {
    const auto c = chi.coeff(n);
    if (!c.is_zero()) arr.push_back({{"z", n}, {"terms", class_json(c)}});
  }
  return arr;
}

CharacterSeries character_from_json(uint32_t p, const json& arr) {
  CharacterSeries chi(p);
  for (const auto& e : arr) chi.add_to(e.at("z").get<size_t>(), class_from_json(p, e.at("terms")));
  chi.trim();
  return chi;
}

json backend_json(const GenericBackend& b) {
  if (b.mode == BackendMode::Exact) return {{"mode", "exact"}};
  return {{"mode", "random"}, {"seed", b.seed}, {"samples", b.samples}, {"ext_degree", b.ext_degree}};
}

bool operator==(const GenericBackend& a, const GenericBackend& b) {
  if (a.mode != b.mode) return false;
  return a.mode == BackendMode::Exact ||
         (a.seed == b.seed && a.samples == b.samples && a.ext_degree == b.ext_degree);
}

GenericBackend backend_from_json(const json& j) {
  if (parse_backend_mode(j.at("mode").get<std::string>()) == BackendMode::Exact) return GenericBackend::exact();
  return GenericBackend::random(j.at("seed").get<uint64_t>(), j.at("samples").get<unsigned>(),
                                j.at("ext_degree").get<unsigned>());
}

CharacterReport make_report(const ParamSet& params, const TauRep& tau, const GenericBackend& backend,
                            const IrreducibleCharacter& res) {
  CharacterReport r;
  r.p = params.p;
  r.t = params.t;
  r.tau = tau.label();
  r.hilbert = res.hilbert;
  r.character = res.character;
  r.status = res.status;
  r.backend = backend;
  r.sample_ranks = res.filtration.sample_ranks;
  r.warning = res.filtration.warning;
  r.notes = res.filtration.notes;
  if (params.t == 1 && res.status == CharacterStatus::Ok) {
    K0Ring ring(params.p);
    try {
      r.reduced_hilbert = reduced_character(ring, res.character).hilbert;
    } catch (const std::runtime_error& e) {
      r.notes.push_back(std::string("reduction failed: ") + e.what());
    }
  }
  return r;
}

json to_json(const CharacterReport& r) {
  json j;
  j["schema"] = 1;
  j["p"] = r.p;
  j["t"] = r.t;
  j["tau"] = {{"i", r.tau.i}, {"j", r.tau.j}};
  j["hilbert"] = r.hilbert;
  j["character"] = character_json(r.character);
  if (r.reduced_hilbert) j["reduced_hilbert"] = *r.reduced_hilbert;
  j["status"] = to_string(r.status);
  json b = backend_json(r.backend);
  if (r.backend.mode == BackendMode::Random) {
    b["sample_ranks"] = r.sample_ranks;
    b["warning"] = r.warning;
  }
  j["backend"] = b;
  j["notes"] = r.notes;
  return j;
}

CharacterReport report_from_json(const json& j) {
  if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unsupported schema version");
  CharacterReport r;
  r.p = j.at("p").get<uint32_t>();
  r.t = j.at("t").get<int>();
  r.tau = {j.at("tau").at("i").get<uint32_t>(), j.at("tau").at("j").get<uint32_t>()};
  r.hilbert = j.at("hilbert").get<std::vector<int64_t>>();
  r.character = character_from_json(r.p, j.at("character"));
  if (j.contains("reduced_hilbert")) r.reduced_hilbert = j["reduced_hilbert"].get<std::vector<int64_t>>();
  const auto status = j.at("status").get<std::string>();
  if (status != "ok" && status != "inconclusive") throw std::invalid_argument("unknown status " + status);
  r.status = status == "ok" ? CharacterStatus::Ok : CharacterStatus::Inconclusive;
  const auto& b = j.at("backend");
  r.backend = backend_from_json(b);
  if (b.contains("sample_ranks")) r.sample_ranks = b["sample_ranks"].get<std::vector<std::vector<size_t>>>();
  if (b.contains("warning")) r.warning = b["warning"].get<bool>();
  if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
  return r;
}

std::string render_table(const CharacterReport& r) {
  std::ostringstream os;
  os << "L(S^" << r.tau.i << " h (x) det^" << r.tau.j << ")  p = " << r.p << ", t = " << r.t << "\n";
  os << "status: " << to_string(r.status) << "\n";
  os << "backend: " << to_string(r.backend.mode);
  if (r.backend.mode == BackendMode::Random)
    os << " (seed " << r.backend.seed << ", " << r.backend.samples << " samples, F_" << r.p << "^" << r.backend.ext_degree
       << ")";
  os << "\n";
  os << "Hilbert: " << render_hilbert(r.hilbert) << "\n";
  int64_t total = 0;
  for (auto h : r.hilbert) total += h;
  os << "dimension: " << total << "\n";
  if (r.reduced_hilbert) os << "reduced Hilbert: " << render_hilbert(*r.reduced_hilbert) << "\n";
  os << "character:\n";
  for (size_t n = 0; n < r.character.size(); ++n) {
    const auto c = r.character.coeff(n);
    if (!c.is_zero()) os << "  z^" << n << ": " << render_class(c) << "\n";
  }
  if (r.warning) os << "warning: samples disagree\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace cherednik::cli
