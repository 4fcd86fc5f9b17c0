#include "doctest.h"
#include "dsqft/stationary.hpp"

using namespace dsqft;

TEST_CASE("n=3 k=1 pattern (K, D+, D+): tail route certificates") {
  const auto cert = verify_spectral_support(TermPattern::mixed(3, 1), 0.1);
  CHECK(cert.holds);
  REQUIRE(cert.chain.size() == 2);
  CHECK(cert.chain[0].r == 2);
  CHECK(cert.chain[0].route == "tail");
  CHECK(cert.chain[0].bound == doctest::Approx(0.2));
  CHECK(cert.chain[1].r == 3);
  CHECK(cert.chain[1].bound == doctest::Approx(0.1));
}

TEST_CASE("n=3 k=3 pattern (D-, D-, K): complement route") {
  const auto cert = verify_spectral_support(TermPattern::mixed(3, 3), 0.1);
  CHECK(cert.holds);
  REQUIRE(cert.chain.size() == 2);
  CHECK(cert.chain[0].route == "complement");
  CHECK(cert.chain[0].bound == doctest::Approx(0.1));
  CHECK(cert.chain[1].bound == doctest::Approx(0.2));
}

TEST_CASE("n=2 pattern (D-, D+): support nonempty, property holds") {
  TermPattern p;
  p.n = 2;
  p.k = 0;
  p.kinds = {FreqSupport::MinusHalfLine, FreqSupport::PlusHalfLine};
  const auto cert = verify_spectral_support(p, 0.5);
  CHECK(cert.holds);
  REQUIRE(cert.chain.size() == 1);
  CHECK(cert.chain[0].bound == doctest::Approx(0.5));
}

TEST_CASE("scrambled pattern produces an explicit counterexample") {
  TermPattern p;
  p.n = 2;
  p.k = 0;
  p.kinds = {FreqSupport::PlusHalfLine, FreqSupport::MinusHalfLine};
  const auto cert = verify_spectral_support(p, 0.25);
  CHECK(!cert.holds);
  REQUIRE(cert.counterexample.size() == 2);
  CHECK(cert.counterexample[0] + cert.counterexample[1] == doctest::Approx(0.0));
  CHECK(cert.counterexample[1] <= -0.25);
}

TEST_CASE("middle-k patterns certify for every k") {
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(verify_spectral_support(TermPattern::mixed(n, k), 0.1).holds);
}

TEST_CASE("out/in equivalence zero certificates") {
  const auto c3 = verify_out_in_equivalence(3, 0.1);
  CHECK(c3.status == ZeroCertificate::Status::Zero);
  CHECK(c3.sum_upper_bound == doctest::Approx(-0.3));

  const auto c8 = verify_out_in_equivalence(8, 1.0);
  CHECK(c8.status == ZeroCertificate::Status::Zero);
  CHECK(c8.sum_upper_bound == doctest::Approx(-8.0));

  const auto c0 = verify_out_in_equivalence(3, 0.0);
  CHECK(c0.status == ZeroCertificate::Status::Inconclusive);
}

TEST_CASE("certificates replay byte-for-byte") {
  const auto a = verify_spectral_support(TermPattern::mixed(5, 2), 0.37);
  const auto b = verify_spectral_support(TermPattern::mixed(5, 2), 0.37);
  CHECK(a.to_json() == b.to_json());
  CHECK(!a.to_json().empty());
  const auto za = verify_out_in_equivalence(4, 0.5);
  const auto zb = verify_out_in_equivalence(4, 0.5);
  CHECK(za.to_json() == zb.to_json());
}

TEST_CASE("reflection duality: mirrored pattern has mirrored bounds") {
  // reflecting D+ <-> D- and reversing the slot order maps the tail route at
  // r to the complement route at the mirrored position with equal bounds
  for (int n = 3; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto cert = verify_spectral_support(TermPattern::mixed(n, k), 0.2);
      TermPattern mirror = TermPattern::mixed(n, n + 1 - k);
      const auto mcert = verify_spectral_support(mirror, 0.2);
      REQUIRE(cert.holds);
      REQUIRE(mcert.holds);
      REQUIRE(cert.chain.size() == mcert.chain.size());
      for (std::size_t i = 0; i < cert.chain.size(); ++i) {
        const auto& fwd = cert.chain[i];
        const auto& bwd = mcert.chain[mcert.chain.size() - 1 - i];
        CHECK(fwd.bound == doctest::Approx(bwd.bound));
      }
    }
  }
  // sanity of the kind-level reflection helper
  const TermPattern p = TermPattern::mixed(4, 2);
  const TermPattern r = p.reflected();
  CHECK(r.kinds[0] == FreqSupport::PlusHalfLine);
  CHECK(r.kinds[2] == FreqSupport::MinusHalfLine);
}

TEST_CASE("contrast report composes certificate and fixture") {
  const auto cert = verify_out_in_equivalence(3, 0.1);
  const auto rep = contrast_report(cert, "tri-bump", cplx(2e-4, -1e-4), 1e-6);
  CHECK(rep.ratio > 5.0);
  CHECK(rep.to_json().find("tri-bump") != std::string::npos);
  CHECK_THROWS_AS(contrast_report(cert, "", cplx(0, 0), 0.0), std::invalid_argument);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(verify_spectral_support(TermPattern::mixed(3, 1), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(TermPattern::mixed(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(verify_out_in_equivalence(2, 0.1), std::invalid_argument);
}
