#include "dsqft/stationary.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace dsqft {

TermPattern TermPattern::mixed(int n, int k) {
  if (n < 2 || k < 1 || k > n) throw std::invalid_argument("TermPattern: need n >= 2, 1 <= k <= n");
  TermPattern p;
  p.n = n;
  p.k = k;
  p.kinds.resize(n);
  for (int l = 1; l <= n; ++l)
    p.kinds[l - 1] = (l < k)   ? FreqSupport::MinusHalfLine
                     : (l > k) ? FreqSupport::PlusHalfLine
                               : FreqSupport::Free;
  return p;
}

TermPattern TermPattern::all_minus(int n) {
  if (n < 1) throw std::invalid_argument("TermPattern: n >= 1");
  TermPattern p;
  p.n = n;
  p.k = 0;
  p.kinds.assign(n, FreqSupport::MinusHalfLine);
  return p;
}

TermPattern TermPattern::reflected() const {
  TermPattern p = *this;
  for (FreqSupport& f : p.kinds) {
    if (f == FreqSupport::MinusHalfLine)
      f = FreqSupport::PlusHalfLine;
    else if (f == FreqSupport::PlusHalfLine)
      f = FreqSupport::MinusHalfLine;
  }
  return p;
}

SupportCertificate verify_spectral_support(const TermPattern& pattern, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("verify_spectral_support: epsilon > 0");
  const int n = pattern.n;
  if (static_cast<int>(pattern.kinds.size()) != n)
    throw std::invalid_argument("verify_spectral_support: malformed pattern");

  SupportCertificate cert;
  cert.n = n;
  cert.k = pattern.k;
  cert.epsilon = epsilon;
  cert.holds = true;

  auto kind = [&](int l) { return pattern.kinds[l - 1]; };  // 1-based

  for (int r = 2; r <= n; ++r) {
    bool tail_ok = true;
    for (int l = r; l <= n; ++l) tail_ok = tail_ok && kind(l) == FreqSupport::PlusHalfLine;
    bool comp_ok = true;
    for (int l = 1; l < r; ++l) comp_ok = comp_ok && kind(l) == FreqSupport::MinusHalfLine;

    if (tail_ok) {
      cert.chain.push_back({r, "tail", (n - r + 1) * epsilon});
      continue;
    }
    if (comp_ok) {
      // sum_{l>=r} E_l = -sum_{l<r} E_l >= (r-1) eps on the constraint surface
      cert.chain.push_back({r, "complement", (r - 1) * epsilon});
      continue;
    }
    // neither route certifies: construct an explicit assignment on the
    // support (free slots absorb the balance) and test the partial sum
    std::vector<double> e(n, 0.0);
    double balance = 0.0;
    int free_count = 0;
    for (int l = 1; l <= n; ++l) {
      switch (kind(l)) {
        case FreqSupport::PlusHalfLine:
          e[l - 1] = epsilon;
          balance += epsilon;
          break;
        case FreqSupport::MinusHalfLine:
          e[l - 1] = -epsilon;
          balance -= epsilon;
          break;
        case FreqSupport::Free:
          ++free_count;
          break;
      }
    }
    if (free_count > 0) {
      for (int l = 1; l <= n; ++l)
        if (kind(l) == FreqSupport::Free) {
          e[l - 1] = -balance / free_count;
        }
    } else if (balance != 0.0) {
      // rescale one compatible slot to land on the delta hyperplane
      for (int l = 1; l <= n; ++l) {
        const double target = e[l - 1] - balance;
        if ((kind(l) == FreqSupport::PlusHalfLine && target >= epsilon) ||
            (kind(l) == FreqSupport::MinusHalfLine && target <= -epsilon)) {
          e[l - 1] = target;
          balance = 0.0;
          break;
        }
      }
    }
    double partial = 0.0;
    for (int l = r; l <= n; ++l) partial += e[l - 1];
    cert.holds = false;
    cert.counterexample = e;
    cert.chain.push_back({r, "counterexample", partial});
    break;
  }
  return cert;
}

ZeroCertificate verify_out_in_equivalence(int n, double epsilon) {
  if (n < 3) throw std::invalid_argument("verify_out_in_equivalence: n >= 3");
  ZeroCertificate cert;
  cert.n = n;
  cert.epsilon = epsilon;
  cert.sum_upper_bound = -n * epsilon;
  cert.status = (epsilon > 0.0) ? ZeroCertificate::Status::Zero
                                : ZeroCertificate::Status::Inconclusive;
  return cert;
}

std::string SupportCertificate::to_json() const {
  nlohmann::json j;
  j["type"] = "spectral_support";
  j["holds"] = holds;
  j["n"] = n;
  j["k"] = k;
  j["epsilon"] = epsilon;
  j["chain"] = nlohmann::json::array();
  for (const IneqStep& s : chain) {
    nlohmann::json e;
    e["r"] = s.r;
    e["route"] = s.route;
    e["bound"] = s.bound;
    e["statement"] = "sum_{l=" + std::to_string(s.r) + "}^{n} E_l >= " +
                     (s.route == "counterexample" ? std::string("VIOLATED at ")
                                                  : std::string()) +
                     nlohmann::json(s.bound).dump();
    j["chain"].push_back(std::move(e));
  }
  j["counterexample"] = counterexample;
  return j.dump(2);
}

std::string ZeroCertificate::to_json() const {
  nlohmann::json j;
  j["type"] = "out_in_equivalence";
  j["status"] = status == Status::Zero ? "zero" : "inconclusive";
  j["n"] = n;
  j["epsilon"] = epsilon;
  j["sum_upper_bound"] = sum_upper_bound;
  j["statement"] =
      "support of prod_l hat{D}^-(E_l) forces sum_l E_l <= " +
      nlohmann::json(sum_upper_bound).dump() +
      (status == Status::Zero ? " < 0, disjoint from the delta hyperplane sum E = 0"
                              : "; gapless boundary case, inconclusive");
  return j.dump(2);
}

std::string ContrastReport::to_json() const {
  nlohmann::json j;
  j["type"] = "contrast";
  j["stationary"] = nlohmann::json::parse(certificate.to_json());
  j["fixture"] = {{"name", fixture_name},
                  {"value_re", fixture_value.real()},
                  {"value_im", fixture_value.imag()},
                  {"error", fixture_error},
                  {"abs_over_error", ratio}};
  return j.dump(2);
}

ContrastReport contrast_report(const ZeroCertificate& cert, const std::string& fixture_name,
                               cplx fixture_value, double fixture_error) {
  if (fixture_name.empty()) throw std::invalid_argument("contrast_report: missing fixture");
  ContrastReport rep;
  rep.certificate = cert;
  rep.fixture_name = fixture_name;
  rep.fixture_value = fixture_value;
  rep.fixture_error = fixture_error;
  rep.ratio = (fixture_error > 0.0) ? std::abs(fixture_value) / fixture_error : 0.0;
  return rep;
}

}  // namespace dsqft
