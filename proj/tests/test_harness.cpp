#include "bfred/algebra/families.hpp"
#include "bfred/error.hpp"
#include "bfred/geninv/drazin.hpp"
#include "bfred/harness/harness.hpp"
#include "doctest.h"

using namespace bfred::harness;
using bfred::algebra::ExactMatrix;

namespace {

TrialPlan plan_for(const char* family, unsigned trials, std::uint64_t seed = 42) {
  TrialPlan p;
  p.seed = seed;
  p.trials = trials;
  p.algebra_family = parse_family(family);
  return p;
}

const TheoremResult& find(const std::vector<TheoremResult>& rs, const std::string& tag) {
  for (const auto& r : rs)
    if (r.tag == tag) return r;
  FAIL("missing tag " << tag);
  return rs.front();
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("u3").n == 3);
  CHECK(parse_family("upper_triangular_5").n == 5);
  CHECK(parse_family("block").kind == FamilyKind::BlockUpper);
  CHECK(parse_family("random_closed").kind == FamilyKind::RandomClosed);
  CHECK(parse_family("diagonal_model").kind == FamilyKind::DiagonalModel);
  CHECK(to_string(parse_family("u4")) == "u4");
  CHECK_THROWS_AS(parse_family("u"), bfred::ShapeError);
  CHECK_THROWS_AS(parse_family("u12"), bfred::ShapeError);
  CHECK_THROWS_AS(parse_family("lower"), bfred::ShapeError);
}

TEST_CASE("generators in U2") {
  auto t = bfred::algebra::diagonal_part(2);
  auto u2 = t.source();
  SplitMix64 rng(7);
  for (int k = 0; k < 30; ++k) {
    Element p = generate_idempotent(rng, t);
    CHECK(p.is_idempotent());
    const auto& m = p.matrix();
    CHECK(m(1, 0).is_zero());
    CHECK((m(0, 0) * (m(0, 0) - 1)).is_zero());
    CHECK((m(1, 1) * (m(1, 1) - 1)).is_zero());
    if (m(0, 0) == m(1, 1)) CHECK(m(0, 1).is_zero());

    Element c = generate_kernel_element(rng, t);
    CHECK(c.matrix()(0, 0).is_zero());
    CHECK(c.matrix()(1, 1).is_zero());

    auto [a, b] = generate_commuting_pair(rng, t);
    CHECK(a * b == b * a);

    CHECK(bfred::geninv::is_quasinilpotent(t(generate_t_nilpotent(rng, t))));
  }
}

TEST_CASE("diagonal generators") {
  SplitMix64 rng(3);
  for (int k = 0; k < 20; ++k) {
    auto d = generate_diagonal(rng);
    auto like = generate_diagonal_like(rng, d);
    auto c = generate_c0_like(rng, d);
    CHECK(like.atoms.size() == d.atoms.size());
    auto r = bfred::spectral::diag_classify(c);
    CHECK(r.riesz);
    CHECK_FALSE(r.fredholm_at_0);
    CHECK_NOTHROW(bfred::spectral::diag_arith(d, like, bfred::spectral::DiagOp::Mul));
  }
}

TEST_CASE("suite on U2 has no failures and reports skips") {
  auto rs = run_suite(plan_for("u2", 20));
  CHECK(rs.size() == theorem_tags().size());
  CHECK_FALSE(has_failures(rs));
  for (const auto& r : rs) CHECK(r.instances_run + r.skipped == 20);
  auto& q = find(rs, "qnil-not-nil-in-gbf");
  CHECK(std::string(q.status()) == "skipped");
  CHECK(q.skip_reason.find("finite dimension") != std::string::npos);
  CHECK(std::string(find(rs, "riesz-beyond-nilpotent").status()) == "skipped");
  CHECK(find(rs, "product-idempotent").instances_run > 0);
}

TEST_CASE("other families") {
  for (const char* f : {"u3", "block", "diagonal"}) {
    CAPTURE(f);
    auto rs = run_suite(plan_for(f, 8, 5));
    CHECK_FALSE(has_failures(rs));
  }
  auto rs = run_suite(plan_for("random", 2, 5));
  CHECK_FALSE(has_failures(rs));
  auto d = run_suite(plan_for("diagonal", 8));
  CHECK(find(d, "bf-spectral-mapping").instances_run > 0);
  CHECK(find(d, "bw-powers").skip_reason == "needs a finite algebra");
}

TEST_CASE("determinism, filters and empty plans") {
  auto p = plan_for("u2", 6, 11);
  CHECK(format_text(p, run_suite(p)) == format_text(p, run_suite(p)));
  CHECK(format_json(p, run_suite(p)) == format_json(p, run_suite(p)));

  p.theorem_filter = {"fredholm-z", "kernel-in-bf"};
  auto rs = run_suite(p);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].tag == "kernel-in-bf");

  auto empty = run_suite(plan_for("u2", 0));
  for (const auto& r : empty) {
    CHECK(std::string(r.status()) == "skipped");
    CHECK(r.skip_reason == "no trials requested");
  }
  CHECK_FALSE(has_failures(empty));
}

TEST_CASE("replay") {
  auto p = plan_for("u2", 4);
  CHECK_FALSE(replay(p, "fredholm-z", 2));
  CHECK_THROWS_AS(replay(p, "no-such-tag", 0), bfred::ShapeError);
}
