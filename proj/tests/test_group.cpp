#include <set>

#include "cherednik/group.hpp"
#include "doctest.h"

using namespace cherednik;

namespace {

struct M2 {
  int64_t a, b, c, d;
  auto operator<=>(const M2&) const = default;
};

M2 key(const GroupElement& g) { return {g(0, 0).value(), g(0, 1).value(), g(1, 0).value(), g(1, 1).value()}; }

// Oracle: scan all 2x2 matrices over F_p with plain integers; a reflection has
// 1 - g nonzero and singular; its class label is the inverse determinant.
std::map<int64_t, std::set<M2>> scan_reflections(int64_t p) {
  std::map<int64_t, std::set<M2>> out;
  auto md = [p](int64_t x) { return ((x % p) + p) % p; };
  for (int64_t a = 0; a < p; ++a)
    for (int64_t b = 0; b < p; ++b)
      for (int64_t c = 0; c < p; ++c)
        for (int64_t d = 0; d < p; ++d) {
          int64_t det = md(a * d - b * c);
          if (!det) continue;
          int64_t ea = md(1 - a), eb = md(-b), ec = md(-c), ed = md(1 - d);
          if (!ea && !eb && !ec && !ed) continue;
          if (md(ea * ed - eb * ec)) continue;
          int64_t inv = 1;
          while (md(inv * det) != 1) ++inv;
          out[inv].insert({a, b, c, d});
        }
  return out;
}

}  // namespace

TEST_CASE("reflection class sizes match the brute-force scan") {
  for (uint32_t p : {3u, 5u, 7u}) {
    CAPTURE(p);
    auto classes = enumerate_reflections(p);
    auto scan = scan_reflections(p);
    REQUIRE(classes.size() == p - 1);
    size_t total = 0;
    std::set<M2> seen;
    for (auto& [l, refl] : classes) {
      CAPTURE(l);
      CHECK(refl.size() == (l == 1 ? (p + 1) * (p - 1) : (p + 1) * p));
      std::set<M2> mats;
      for (auto& s : refl) {
        CHECK(s.lambda.value() == l);
        CHECK((Fp(1, p) - s.pairing()).value() == l);
        auto g = reflection_to_matrix(s);
        CHECK(g.rank_of_one_minus() == 1);
        mats.insert(key(g));
      }
      CHECK(mats.size() == refl.size());
      CHECK(mats == scan[l]);
      for (auto& m : mats) CHECK(seen.insert(m).second);
      total += refl.size();
    }
    size_t scan_total = 0;
    for (auto& [l, s] : scan) scan_total += s.size();
    CHECK(total == scan_total);
  }
  auto c3 = enumerate_reflections(3);
  CHECK(c3[2].size() == 12);
  CHECK(c3[1].size() == 8);
  auto c5 = enumerate_reflections(5);
  for (uint32_t l : {2u, 3u, 4u}) CHECK(c5[l].size() == 30);
  CHECK(c5[1].size() == 24);
}

TEST_CASE("reflection_to_matrix examples") {
  const uint32_t p = 3;
  Reflection s{{Fp(1, p), Fp(0, p)}, {Fp(2, p), Fp(0, p)}, Fp(2, p)};
  CHECK(reflection_to_matrix(s) == GroupElement(p, 2, 0, 0, 1));
  // Conjugate to diag(lambda^{-1}, 1).
  CHECK(reflection_to_matrix(s).det() == Fp(2, p).inv());

  Reflection u{{Fp(0, 5), Fp(1, 5)}, {Fp(3, 5), Fp(0, 5)}, Fp(1, 5)};
  auto g = reflection_to_matrix(u);
  CHECK(g == GroupElement(5, 1, 3, 0, 1));
  CHECK_FALSE(g.is_identity());
}

TEST_CASE("h^* action of a reflection is x - (alpha_vee, x) alpha") {
  for (uint32_t p : {3u, 5u}) {
    for (auto& [l, refl] : enumerate_reflections(p)) {
      for (auto& s : refl) {
        auto hs = act_on_hstar(reflection_to_matrix(s));
        for (int j = 0; j < 2; ++j)
          for (int i = 0; i < 2; ++i) {
            Fp expected = Fp(i == j ? 1 : 0, p) - s.alpha_vee[j] * s.alpha[i];
            CHECK(hs(i, j) == expected);
          }
        // s . alpha = lambda alpha on h^*.
        for (int i = 0; i < 2; ++i) CHECK(hs(i, 0) * s.alpha[0] + hs(i, 1) * s.alpha[1] == s.lambda * s.alpha[i]);
      }
    }
  }
}

TEST_CASE("class closure under conjugation") {
  std::mt19937_64 rng(2024);
  for (uint32_t p : {3u, 5u}) {
    auto scan = scan_reflections(p);
    for (auto& [l, refl] : enumerate_reflections(p)) {
      for (size_t k = 0; k < refl.size(); k += 3) {
        auto s = reflection_to_matrix(refl[k]);
        for (int t = 0; t < 20; ++t) {
          auto g = random_element(p, rng);
          CHECK(scan[l].count(key(g * s * g.inverse())) == 1);
        }
      }
    }
  }
}

TEST_CASE("h^* action") {
  CHECK(act_on_hstar(GroupElement(5, 1, 0, 0, 1)).is_identity());
  CHECK(act_on_hstar(GroupElement(5, 2, 0, 0, 3)) == GroupElement(5, 3, 0, 0, 2));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto g = random_element(7, rng), h = random_element(7, rng);
    CHECK(act_on_hstar(g * h) == act_on_hstar(g) * act_on_hstar(h));
  }
}

TEST_CASE("group enumeration and generators") {
  for (uint32_t p : {3u, 5u, 7u}) {
    auto all = all_elements(p);
    CHECK(all.size() == static_cast<size_t>(p * p - 1) * (p * p - p));
    // Closure of the generators by breadth-first search.
    std::set<M2> seen{key(GroupElement(p, 1, 0, 0, 1))};
    std::vector<GroupElement> frontier{GroupElement(p, 1, 0, 0, 1)};
    auto gens = generators(p);
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (auto& x : frontier)
        for (auto& g : gens) {
          auto y = g * x;
          if (seen.insert(key(y)).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    CHECK(seen.size() == all.size());
    auto s = singer_element(p);
    CHECK(s.order() == p * p - 1);
  }
  CHECK_THROWS_AS(GroupElement(3, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_reflections(4), std::invalid_argument);
}
