#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "fusion/label.hpp"

namespace fusion {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& b) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  bool is_zero() const;
  IntMatrix columns(std::size_t from, std::size_t to) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Integer& k);
  /// col i += k * col j
  void add_col(std::size_t i, std::size_t j, const Integer& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

/// Determinant by fraction-free elimination.
Integer determinant(IntMatrix m);

struct SmithForm {
  std::vector<Integer> factors;  // non-zero invariant factors, each dividing the next
  std::size_t rank = 0;
  IntMatrix u, v;  // unimodular, u * A * v = diag(factors) padded with zeros
  IntMatrix d;
};

SmithForm smith_normal_form(const IntMatrix& a);
/// Checks u * a * v == d, the divisibility chain and |det u| = |det v| = 1.
bool verify_smith(const IntMatrix& a, const SmithForm& s);

/// Row Hermite normal form: the non-zero rows form the canonical basis of the
/// row lattice (positive pivots, entries above a pivot reduced into [0, pivot)).
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Columns form a saturated basis of {x : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

struct CokernelInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  friend bool operator==(const CokernelInvariants&, const CokernelInvariants&) = default;
};
/// Invariants of coker(a : Z^cols -> Z^rows).
CokernelInvariants cokernel_invariants(const IntMatrix& a);
std::string to_string(const CokernelInvariants& c);

/// True iff x (a column of length a.rows()) lies in the column lattice of a.
bool in_column_lattice(const IntMatrix& a, const std::vector<Integer>& x);

// ---------------------------------------------------------------- sparse

using SparseVector = std::map<std::size_t, Integer>;

/// Sparse matrix stored by columns.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseVector> cols;
  std::size_t nonzeros() const;
  IntMatrix dense() const;
  static SparseMatrix from_dense(const IntMatrix& m);
};

struct SparseOptions {
  /// Residual blocks with fewer entries than this are densified directly;
  /// larger residuals are still densified but flagged in the result.
  std::size_t densify_below = 10000;
};

/// Outcome of unit-pivot elimination followed by a dense Smith form of the
/// residual block.
struct SparseReduction {
  std::size_t rank = 0;
  std::size_t unit_pivots = 0;
  std::size_t residual_rows = 0, residual_cols = 0;
  bool large_residual = false;
  CokernelInvariants cokernel;
  /// Saturated kernel basis in the original column coordinates.
  std::vector<SparseVector> kernel;
};

/// Rank, cokernel invariants and (optionally) a kernel basis. Cokernel
/// invariants are preserved because every step is unimodular.
SparseReduction sparse_reduce(const SparseMatrix& a, bool want_kernel, const SparseOptions& opts = {});

/// Membership of each target column in the column lattice of a.
std::vector<bool> sparse_in_lattice(const SparseMatrix& a, const std::vector<SparseVector>& targets,
                                    const SparseOptions& opts = {});

}  // namespace fusion
