#pragma once

#include <Eigen/Dense>

#include "dsqft/wightman.hpp"

namespace dsqft {

// Word in the extended Borchers algebra: a finite product of tagged field
// slots applied to the vacuum; length 0 is the vacuum itself.
struct Word {
  std::vector<FieldSlot> slots;
};

// involution (f_1 x ... x f_n)* = conj(f_n) x ... x conj(f_1)
Word star(const Word& w);

struct FormFactorGram {
  std::vector<Word> basis;
  Eigen::MatrixXcd matrix;       // G_ij = F(star(w_i) @ w_j)
  Eigen::MatrixXd entry_error;
};

// Gram of the form factor functional over the word basis; entries through the
// cluster expansion of truncated n-point functions. Desk scale: word length
// <= 4.
FormFactorGram gram(const std::vector<Word>& basis, const WightmanEngine& engine);

double gram_norm(const FormFactorGram& g);  // spectral norm of the Hermitized matrix

struct GramSignature {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;
  double tol = 0.0;
};
// eigenvalue counts above tol / within +-tol / below -tol (tol absolute)
GramSignature signature(const FormFactorGram& g, double tol);

struct NullQuotient {
  Eigen::MatrixXcd reduced;     // Gram restricted to the retained eigenbasis (diagonal)
  Eigen::MatrixXcd projection;  // columns: retained eigenvectors in the word basis
  std::vector<double> removed;  // eigenvalues inside the kernel band
};
NullQuotient null_quotient(const FormFactorGram& g, double tol);

}  // namespace dsqft
