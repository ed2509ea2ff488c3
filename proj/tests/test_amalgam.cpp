#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace sclqm;

namespace {

AmalgamWord word(const Amalgam& g, std::string_view s) { return parse_amalgam_word(s, g); }

std::string spec_text(const std::string& embed_a) {
  return "[group A]\norder = 4\ntable =\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n"
         "[group B]\norder = 4\ntable =\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n"
         "[group C]\norder = 2\ntable =\n0 1\n1 0\n"
         "[embed A]\n" + embed_a + "\n[embed B]\n0 2\n";
}

}  // namespace

TEST_CASE("finite group tables are validated", "[amalgam]") {
  CHECK_NOTHROW(FiniteGroupTable::from_rows({{0, 1}, {1, 0}}, "Z2"));
  CHECK_THROWS_AS(FiniteGroupTable::from_rows({{0, 1}, {0, 1}}, "bad"), InvalidInput);
  CHECK_THROWS_AS(FiniteGroupTable::from_rows({{0, 1, 2}, {1, 2, 0}}, "ragged"), InvalidInput);
  CHECK_THROWS_AS(FiniteGroupTable::from_rows({{0, 1, 5}, {1, 2, 0}, {2, 0, 1}}, "range"), InvalidInput);
  // Latin square with identity 0 and x*x = 0 everywhere; no group of order 5
  // looks like that, so associativity has to fail somewhere.
  const std::vector<std::vector<int>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroupTable::from_rows(loop, "loop"), InvalidInput);
  const auto z6 = FiniteGroupTable::cyclic(6);
  CHECK(z6.element_order(2) == 3);
  CHECK(z6.inverse(1) == 5);
}

TEST_CASE("embeddings are validated", "[amalgam]") {
  using G = FiniteGroupTable;
  CHECK_THROWS_AS(Amalgam::validate({G::cyclic(4), G::cyclic(6), G::cyclic(2), {0, 0}, {0, 3}}), InvalidInput);
  CHECK_THROWS_AS(Amalgam::validate({G::cyclic(4), G::cyclic(6), G::cyclic(2), {0, 1}, {0, 3}}), InvalidInput);
  CHECK_THROWS_AS(Amalgam::validate({G::cyclic(2), G::cyclic(6), G::cyclic(2), {0, 1}, {0, 3}}), InvalidInput);
  CHECK_THROWS_AS(Amalgam::validate({G::cyclic(4), G::cyclic(6), G::cyclic(2), {0, 2}, {}}), InvalidInput);
  CHECK_THROWS_AS(Amalgam::validate({G::cyclic(4), G::cyclic(6), G::cyclic(2), {0, 7}, {0, 3}}), InvalidInput);
  CHECK_NOTHROW(oracle::sl2z());
}

TEST_CASE("spec files", "[amalgam]") {
  std::istringstream good(spec_text("0 2"));
  const Amalgam g = parse_amalgam_spec(good);
  CHECK(g.factor(Side::A).order() == 4);
  std::istringstream again(format_amalgam_spec(g.spec()));
  CHECK(parse_amalgam_spec(again).spec().embed_a == g.spec().embed_a);

  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_amalgam_spec(in);
    } catch (const InvalidInput& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("[group D]\n").find("line 1") != std::string::npos);
  CHECK(message("order = 2\n").find("line 1") != std::string::npos);
  CHECK(message("[group A]\norder = 2\ntable =\n0 1\n1\n").find("line 5") != std::string::npos);
  CHECK(message("# comment\n[group A]\norder = x\n").find("line 3") != std::string::npos);
  CHECK(message(spec_text("0 1")).find("homomorphism") != std::string::npos);
  CHECK(message("[group A]\norder = 2\ntable =\n0 1\n1 0\n").find("missing section") != std::string::npos);

  const Amalgam sl = load_amalgam_spec(SCLQM_FIXTURES "/sl2z.spec");
  CHECK(sl.ball_size(2) == 16);
  CHECK_THROWS_AS(load_amalgam_spec(SCLQM_FIXTURES "/absent.spec"), InvalidInput);
  CHECK_THROWS_AS(word(sl, "A:4"), InvalidInput);
  CHECK_THROWS_AS(word(sl, "C:1"), InvalidInput);
  CHECK_THROWS_AS(word(sl, "A:x"), InvalidInput);
  CHECK(word(sl, "").empty());
}

TEST_CASE("normal forms agree with SL(2,Z) matrices", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  std::mt19937 rng(41);
  std::size_t equal_pairs = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const AmalgamWord u = oracle::random_word(g, 1 + trial % 8, rng);
    AmalgamWord v;
    if (trial % 2 == 0) {
      v = oracle::random_word(g, 1 + (trial / 2) % 8, rng);
    } else {
      // u respelled: C twists across each seam, then split syllables
      std::vector<int> twist(u.size() + 1, 0);
      for (std::size_t i = 1; i < u.size(); ++i) twist[i] = std::uniform_int_distribution<int>(0, 1)(rng);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& f = g.factor(u[i].side);
        const int left = g.embed(u[i].side, g.subgroup().inverse(twist[i]));
        v.push_back({u[i].side, f.mul(f.mul(left, u[i].element), g.embed(u[i].side, twist[i + 1]))});
      }
      while (v.size() < 12 && std::uniform_int_distribution<int>(0, 2)(rng) != 0) {
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
        const auto& f = g.factor(v[i].side);
        const int x = std::uniform_int_distribution<int>(0, f.order() - 1)(rng);
        const Syllable rest{v[i].side, f.mul(f.inverse(x), v[i].element)};
        v[i].element = x;
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, rest);
      }
    }
    const bool by_matrix = oracle::sl2z_matrix(u) == oracle::sl2z_matrix(v);
    REQUIRE(g.equal(u, v) == by_matrix);
    REQUIRE(oracle::sl2z_matrix(g.reduce(u)) == oracle::sl2z_matrix(u));
    REQUIRE(g.is_reduced(g.reduce(u)));
    equal_pairs += by_matrix;
  }
  CHECK(equal_pairs >= 250);
}

TEST_CASE("products and inverses", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  std::mt19937 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const AmalgamWord u = oracle::random_word(g, trial % 7, rng);
    const AmalgamWord v = oracle::random_word(g, trial % 5, rng);
    AmalgamWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(g.multiply(u, v) == g.normal_form(uv));
    AmalgamWord uu = u;
    const AmalgamWord inv = g.inverse_word(u);
    uu.insert(uu.end(), inv.begin(), inv.end());
    CHECK(g.normal_form(uu) == NormalForm{{}, 0});
  }
  // S^2 = U^3 = -I is central of order 2.
  CHECK(g.equal(word(g, "A:2"), word(g, "B:3")));
  CHECK(g.equal(word(g, "A:2 A:2"), {}));
  CHECK(g.is_cyclically_reduced(word(g, "A:1 B:1")));
  CHECK_FALSE(g.is_reduced(word(g, "A:1 A:1")));
  CHECK_FALSE(g.is_reduced(word(g, "A:1 A:2 B:1")));
}

TEST_CASE("cyclic reduction in amalgams", "[amalgam]") {
  for (const auto& g : {oracle::sl2z(), oracle::cyclic_amalgam(6, 9, 3)}) {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
      AmalgamWord core = oracle::random_reduced(g, 2 * (1 + trial % 3), rng);
      const AmalgamWord by = oracle::random_word(g, trial % 5, rng);
      AmalgamWord w = by;
      w.insert(w.end(), core.begin(), core.end());
      const AmalgamWord by_inv = g.inverse_word(by);
      w.insert(w.end(), by_inv.begin(), by_inv.end());
      const auto [c, conj] = g.cyclically_reduce(w);
      REQUIRE(g.is_cyclically_reduced(c));
      REQUIRE(c.size() == core.size());
      AmalgamWord back = conj;
      back.insert(back.end(), c.begin(), c.end());
      const AmalgamWord conj_inv = g.inverse_word(conj);
      back.insert(back.end(), conj_inv.begin(), conj_inv.end());
      REQUIRE(g.equal(back, w));
    }
  }
}

TEST_CASE("double coset condition", "[amalgam]") {
  const Amalgam sl = oracle::sl2z();
  const auto r = sl.double_coset_condition(word(sl, "A:1 B:1"));
  CHECK(r.holds);
  CHECK(r.comparisons == 8);
  CHECK_FALSE(r.witness);

  const Amalgam d = oracle::dihedral();
  const auto s = d.double_coset_condition(word(d, "A:1 B:1"));
  CHECK_FALSE(s.holds);
  REQUIRE(s.witness);
  AmalgamWord twisted{{Side::A, d.embed(Side::A, s.witness->left)}, {Side::A, 1}, {Side::B, 1},
                      {Side::A, d.embed(Side::A, s.witness->right)}};
  CHECK(d.equal(twisted, s.witness->conjugate_of_inverse));

  CHECK_THROWS_AS(sl.double_coset_condition(word(sl, "A:1")), HypothesisViolation);
  CHECK_THROWS_AS(sl.double_coset_condition(word(sl, "A:1 B:1 A:1")), HypothesisViolation);
  CHECK_THROWS_AS(sl.double_coset_condition(word(sl, "A:1 A:1")), InvalidInput);
}

TEST_CASE("counting matches brute-force twist enumeration", "[amalgam]") {
  for (const auto& g : {oracle::sl2z(), oracle::cyclic_amalgam(6, 9, 3), oracle::cyclic_amalgam(4, 4, 2)}) {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
      const AmalgamWord w = oracle::random_reduced(g, 2 + trial % 2, rng);
      const AmalgamWord h = oracle::random_word(g, 1 + trial % 10, rng);
      const AmalgamWord spelling = g.reduce(h);
      if (spelling.size() > 8) continue;
      REQUIRE(g.counting_value(w, h) == oracle::twist_bruteforce_count(g, w, spelling));
    }
  }
  const Amalgam sl = oracle::sl2z();
  CHECK_THROWS_AS(sl.counting_value(word(sl, "A:1"), word(sl, "A:1 B:1")), InvalidInput);
}

TEST_CASE("amalgam counting quasimorphism laws", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  const AmalgamWord w = word(g, "A:1 B:1");
  for (const auto& nf : g.ball_enumerate(4, 1000)) {
    const AmalgamWord x = g.to_word(nf);
    REQUIRE(g.quasimorphism(w, g.inverse_word(x)) == -g.quasimorphism(w, x));
  }
  for (std::int64_t n = 1; n <= 8; ++n) {
    const AmalgamWord wn = g.repeat(w, n);
    CHECK(g.counting_value(w, wn) >= n);
    CHECK(g.counting_value(g.inverse_word(w), wn) == 0);
    CHECK(g.quasimorphism(w, wn) >= n);
  }
  const auto bracket = g.homogeneous_interval(w, w, 16);
  CHECK(bracket.contains(Rational(1)));
  CHECK(bracket.width() == Rational(1, 4));
  CHECK(g.homogeneous_interval(w, word(g, "A:1"), 8).width() == Rational(0));
  CHECK_THROWS_AS(g.homogeneous_interval(w, w, 4), InvalidInput);
}

TEST_CASE("balls in amalgams", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  CHECK(g.ball_size(0) == 2);
  CHECK(g.ball_enumerate(0, 10).size() == 2);
  CHECK(g.ball_size(2) == 16);
  CHECK(g.ball_size(4) == 44);
  const auto ball = g.ball_enumerate(4, 1000);
  CHECK(ball.size() == 44);
  std::set<oracle::Mat> distinct;
  for (const auto& nf : ball) distinct.insert(oracle::sl2z_matrix(g.to_word(nf)));
  CHECK(distinct.size() == 44);
  CHECK_THROWS_AS(g.ball_enumerate(12, 100), LimitExceeded);
}

TEST_CASE("enumerated amalgam defect", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  const std::int64_t d = g.defect_lower_bound(word(g, "A:1 B:1"), 3, 1000);
  CHECK(d >= 1);
  CHECK(d <= amalgam_defect_bound);
}

TEST_CASE("mirror search", "[amalgam]") {
  const Amalgam d = oracle::dihedral();
  const auto m = d.mirror_check(word(d, "A:1 B:1"), 4);
  REQUIRE(m);
  CHECK(d.verify_mirror(word(d, "A:1 B:1"), *m));
  const Amalgam sl = oracle::sl2z();
  CHECK_FALSE(sl.mirror_check(word(sl, "A:1 B:1"), 4));
  const auto torsion = sl.mirror_check(word(sl, "B:1"), 4);
  REQUIRE(torsion);
  CHECK(torsion->power == 6);
}

TEST_CASE("certificate", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  const AmalgamCertificate c = certify_scl_lower(g, word(g, "A:1 B:1"));
  CHECK(c.double_coset.holds);
  CHECK(c.power_values.size() == 8);
  for (std::size_t n = 0; n < c.power_values.size(); ++n) CHECK(c.power_values[n] >= static_cast<std::int64_t>(n + 1));
  CHECK(c.defect_bound == 78);
  CHECK(c.homogenized_defect_bound == 312);
  CHECK(c.scl_lower == Rational(1, 624));

  const Amalgam d = oracle::dihedral();
  CHECK_THROWS_AS(certify_scl_lower(d, word(d, "A:1 B:1")), HypothesisViolation);
  CHECK_THROWS_AS(certify_scl_lower(g, word(g, "A:1")), HypothesisViolation);
}

TEST_CASE("mirror search is exhaustive at power one", "[amalgam]") {
  const Amalgam g = oracle::sl2z();
  const auto conjugators = g.ball_enumerate(6, 1000);
  std::size_t mirrored = 0;
  for (const auto& nf : g.ball_enumerate(4, 1000)) {
    const AmalgamWord w = g.to_word(nf);
    if (w.size() < 2 || !g.is_cyclically_reduced(w)) continue;
    const auto target = oracle::sl2z_matrix(g.inverse_word(w));
    bool direct = false;
    for (const auto& b : conjugators) {
      AmalgamWord full = g.to_word(b);
      full.insert(full.end(), w.begin(), w.end());
      const AmalgamWord b_inv = g.inverse_word(g.to_word(b));
      full.insert(full.end(), b_inv.begin(), b_inv.end());
      if (oracle::sl2z_matrix(full) == target) direct = true;
    }
    const auto found = g.mirror_check(w, 1);
    REQUIRE(found.has_value() == direct);
    mirrored += direct;
  }
  CHECK(mirrored > 0);
}
