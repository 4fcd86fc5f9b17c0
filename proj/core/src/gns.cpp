#include "dsqft/gns.hpp"

#include <stdexcept>

namespace dsqft {

Word star(const Word& w) {
  Word out;
  out.slots.reserve(w.slots.size());
  for (auto it = w.slots.rbegin(); it != w.slots.rend(); ++it) {
    FieldSlot s = *it;
    s.f = conjugate(s.f);
    out.slots.push_back(std::move(s));
  }
  return out;
}

FormFactorGram gram(const std::vector<Word>& basis, const WightmanEngine& engine) {
  for (const Word& w : basis)
    if (w.slots.size() > 4)
      throw std::invalid_argument("gram: desk scale caps word length at 4");

  const int n = static_cast<int>(basis.size());
  FormFactorGram g;
  g.basis = basis;
  g.matrix.resize(n, n);
  g.entry_error.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const Word wi = star(basis[i]);
    for (int j = 0; j < n; ++j) {
      std::vector<FieldSlot> seq = wi.slots;
      seq.insert(seq.end(), basis[j].slots.begin(), basis[j].slots.end());
      const ValErr v = engine.full_vev(seq);
      g.matrix(i, j) = v.value;
      g.entry_error(i, j) = v.error;
    }
  }
  return g;
}

namespace {
Eigen::MatrixXcd hermitized(const FormFactorGram& g) {
  return 0.5 * (g.matrix + g.matrix.adjoint());
}
}  // namespace

double gram_norm(const FormFactorGram& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitized(g));
  double best = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    best = std::max(best, std::abs(es.eigenvalues()[i]));
  return best;
}

GramSignature signature(const FormFactorGram& g, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitized(g));
  GramSignature sig;
  sig.tol = tol;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > tol)
      ++sig.n_plus;
    else if (lam < -tol)
      ++sig.n_minus;
    else
      ++sig.n_zero;
  }
  return sig;
}

NullQuotient null_quotient(const FormFactorGram& g, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitized(g));
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  std::vector<int> keep;
  NullQuotient out;
  for (int i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i]) <= tol)
      out.removed.push_back(vals[i]);
    else
      keep.push_back(i);
  }
  out.projection.resize(vals.size(), static_cast<int>(keep.size()));
  out.reduced = Eigen::MatrixXcd::Zero(keep.size(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.projection.col(c) = vecs.col(keep[c]);
    out.reduced(c, c) = vals[keep[c]];
  }
  return out;
}

}  // namespace dsqft
