#include "fusion/smith.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace fusion {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ConstructionError("ragged matrix literal");
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& b) const {
  if (cols_ != b.rows_) throw DomainError("matrix dimensions do not match");
  IntMatrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::columns(std::size_t from, std::size_t to) const {
  IntMatrix m(rows_, to - from);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
  return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if ((*this)(j, c) != 0) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if ((*this)(r, j) != 0) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).get_str();
    out << "]";
  }
  out << "]";
  return out.str();
}

Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Floor division keeping remainders small in absolute value.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer r = a - q * b;
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s;
  IntMatrix m = a;
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix u = IntMatrix::identity(r), v = IntMatrix::identity(c);
  std::size_t t = 0;
  while (t < std::min(r, c)) {
    // Smallest non-zero entry of the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (m(i, j) != 0 && (!best || abs(m(i, j)) < abs(m(best->first, best->second)))) best = {{i, j}};
    if (!best) break;
    m.swap_rows(t, best->first);
    u.swap_rows(t, best->first);
    m.swap_cols(t, best->second);
    v.swap_cols(t, best->second);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (m(i, t) == 0) continue;
        Integer q = nearest_quotient(m(i, t), m(t, t));
        m.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (m(i, t) != 0) {
          m.swap_rows(t, i);
          u.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (m(t, j) == 0) continue;
        Integer q = nearest_quotient(m(t, j), m(t, t));
        m.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (m(t, j) != 0) {
          m.swap_cols(t, j);
          v.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block.
      for (std::size_t i = t + 1; i < r && clean; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (m(i, j) != 0 && !mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            m.add_row(t, i, 1);
            u.add_row(t, i, 1);
            clean = false;
            break;
          }
    }
    if (m(t, t) < 0) {
      m.negate_row(t);
      u.negate_row(t);
    }
    s.factors.push_back(m(t, t));
    ++t;
  }
  s.rank = s.factors.size();
  s.u = std::move(u);
  s.v = std::move(v);
  s.d = std::move(m);
  return s;
}

bool verify_smith(const IntMatrix& a, const SmithForm& s) {
  if (!(s.u * a * s.v == s.d)) return false;
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j) {
      const Integer& x = s.d(i, j);
      if (i != j || i >= s.rank) {
        if (x != 0) return false;
      } else if (x != s.factors[i] || x <= 0) {
        return false;
      }
    }
  for (std::size_t i = 1; i < s.rank; ++i)
    if (!mpz_divisible_p(s.factors[i].get_mpz_t(), s.factors[i - 1].get_mpz_t())) return false;
  return abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t r = m.rows(), c = m.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    // Euclid on the column below `row`.
    while (true) {
      std::optional<std::size_t> p;
      for (std::size_t i = row; i < r; ++i)
        if (m(i, col) != 0 && (!p || abs(m(i, col)) < abs(m(*p, col)))) p = i;
      if (!p) break;
      m.swap_rows(row, *p);
      bool done = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (m(i, col) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(row, col).get_mpz_t());
        m.add_row(i, row, -q);
        if (m(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m(row, col) == 0) continue;
    if (m(row, col) < 0) m.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(row, col).get_mpz_t());
      m.add_row(i, row, -q);
    }
    ++row;
  }
  IntMatrix out(row, c);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = m(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  auto s = smith_normal_form(a);
  return s.v.columns(s.rank, a.cols());
}

CokernelInvariants cokernel_invariants(const IntMatrix& a) {
  auto s = smith_normal_form(a);
  CokernelInvariants out;
  out.free_rank = a.rows() - s.rank;
  for (const auto& f : s.factors)
    if (f > 1) out.torsion.push_back(f);
  return out;
}

std::string to_string(const CokernelInvariants& c) {
  std::string out;
  if (c.free_rank > 0) out = c.free_rank == 1 ? "Z" : "Z^" + std::to_string(c.free_rank);
  for (const auto& t : c.torsion) out += (out.empty() ? "" : " + ") + ("Z/" + t.get_str());
  return out.empty() ? "0" : out;
}

bool in_column_lattice(const IntMatrix& a, const std::vector<Integer>& x) {
  if (x.size() != a.rows()) throw DomainError("vector length does not match the matrix");
  auto s = smith_normal_form(a);
  // a = u^-1 d v^-1, so x = a y iff u x = d z for some integer z.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer y = 0;
    for (std::size_t k = 0; k < a.rows(); ++k)
      if (s.u(i, k) != 0 && x[k] != 0) y += s.u(i, k) * x[k];
    if (i < s.rank) {
      if (!mpz_divisible_p(y.get_mpz_t(), s.factors[i].get_mpz_t())) return false;
    } else if (y != 0) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- sparse

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols) n += c.size();
  return n;
}

IntMatrix SparseMatrix::dense() const {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, x] : cols[j]) m(i, j) = x;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m) {
  SparseMatrix s;
  s.rows = m.rows();
  s.cols.resize(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s.cols[j].emplace(i, m(i, j));
  return s;
}

namespace {

void axpy(SparseVector& y, const Integer& k, const SparseVector& x, std::vector<std::size_t>* added = nullptr) {
  for (const auto& [i, v] : x) {
    auto [it, fresh] = y.emplace(i, k * v);
    if (fresh) {
      if (added) added->push_back(i);
    } else {
      it->second += k * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

// Unit-pivot elimination shared by reduction and membership tests. Columns
// flagged as targets are transformed but never used as pivots.
struct Eliminator {
  std::vector<SparseVector> cols;
  std::vector<SparseVector> combo;  // each column as a combination of the originals
  std::vector<bool> target;
  std::vector<bool> alive;
  std::vector<bool> row_alive;
  std::size_t pivots = 0;
  bool track = false;

  Eliminator(const SparseMatrix& a, const std::vector<SparseVector>& targets, bool track_combos)
      : track(track_combos) {
    cols = a.cols;
    cols.insert(cols.end(), targets.begin(), targets.end());
    target.assign(cols.size(), false);
    for (std::size_t j = a.cols.size(); j < cols.size(); ++j) target[j] = true;
    alive.assign(cols.size(), true);
    row_alive.assign(a.rows, true);
    if (track) {
      combo.resize(cols.size());
      for (std::size_t j = 0; j < a.cols.size(); ++j) combo[j][j] = 1;
    }
  }

  void run() {
    // Row -> columns holding an entry there.
    std::vector<std::vector<std::size_t>> where(row_alive.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [i, x] : cols[j]) where[i].push_back(j);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (!alive[c] || target[c] || cols[c].empty()) continue;
        // Prefer the unit entry whose row is shortest.
        std::optional<std::size_t> r;
        for (const auto& [i, x] : cols[c])
          if ((x == 1 || x == -1) && (!r || where[i].size() < where[*r].size())) r = i;
        if (!r) continue;
        const Integer piv = cols[c].at(*r);
        const SparseVector pcol = cols[c];
        const SparseVector pcombo = track ? combo[c] : SparseVector{};
        for (std::size_t j : where[*r]) {
          if (j == c || !alive[j]) continue;
          auto it = cols[j].find(*r);
          if (it == cols[j].end()) continue;
          Integer k = -it->second * piv;
          std::vector<std::size_t> added;
          axpy(cols[j], k, pcol, &added);
          for (std::size_t i : added) where[i].push_back(j);
          if (track) axpy(combo[j], k, pcombo);
        }
        alive[c] = false;
        row_alive[*r] = false;
        ++pivots;
        progress = true;
      }
    }
  }
};

}  // namespace

SparseReduction sparse_reduce(const SparseMatrix& a, bool want_kernel, const SparseOptions& opts) {
  Eliminator el(a, {}, want_kernel);
  el.run();
  SparseReduction res;
  res.unit_pivots = el.pivots;

  // Residual block: surviving columns on surviving rows.
  std::vector<std::size_t> rmap(a.rows, SIZE_MAX);
  std::size_t nr = 0;
  for (std::size_t i = 0; i < a.rows; ++i)
    if (el.row_alive[i]) rmap[i] = nr++;
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < a.cols.size(); ++j)
    if (el.alive[j]) live.push_back(j);
  res.residual_rows = nr;
  res.residual_cols = live.size();
  res.large_residual = nr * live.size() >= opts.densify_below;

  IntMatrix r(nr, live.size());
  for (std::size_t k = 0; k < live.size(); ++k)
    for (const auto& [i, x] : el.cols[live[k]]) {
      if (rmap[i] == SIZE_MAX) throw std::logic_error("eliminated row survived in a live column");
      r(rmap[i], k) = x;
    }
  auto s = smith_normal_form(r);
  res.rank = el.pivots + s.rank;
  res.cokernel.free_rank = nr - s.rank;
  for (const auto& f : s.factors)
    if (f > 1) res.cokernel.torsion.push_back(f);
  if (want_kernel) {
    for (std::size_t k = s.rank; k < live.size(); ++k) {
      SparseVector vec;
      for (std::size_t t = 0; t < live.size(); ++t)
        if (s.v(t, k) != 0) axpy(vec, s.v(t, k), el.combo[live[t]]);
      res.kernel.push_back(std::move(vec));
    }
  }
  return res;
}

std::vector<bool> sparse_in_lattice(const SparseMatrix& a, const std::vector<SparseVector>& targets,
                                    const SparseOptions&) {
  Eliminator el(a, targets, false);
  el.run();
  std::vector<std::size_t> rmap(a.rows, SIZE_MAX);
  std::size_t nr = 0;
  for (std::size_t i = 0; i < a.rows; ++i)
    if (el.row_alive[i]) rmap[i] = nr++;
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < a.cols.size(); ++j)
    if (el.alive[j]) live.push_back(j);
  IntMatrix r(nr, live.size());
  for (std::size_t k = 0; k < live.size(); ++k)
    for (const auto& [i, x] : el.cols[live[k]]) r(rmap[i], k) = x;
  auto s = smith_normal_form(r);
  std::vector<bool> out;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& col = el.cols[a.cols.size() + t];
    std::vector<Integer> x(nr);
    bool ok = true;
    for (const auto& [i, v] : col) {
      if (rmap[i] == SIZE_MAX) {
        // Eliminated rows were cleared by the pivots; a leftover means the
        // target was not reduced there.
        ok = false;
        break;
      }
      x[rmap[i]] = v;
    }
    if (ok) {
      for (std::size_t i = 0; i < nr && ok; ++i) {
        Integer y = 0;
        for (std::size_t k = 0; k < nr; ++k)
          if (s.u(i, k) != 0 && x[k] != 0) y += s.u(i, k) * x[k];
        if (i < s.rank) ok = mpz_divisible_p(y.get_mpz_t(), s.factors[i].get_mpz_t());
        else ok = y == 0;
      }
    }
    out.push_back(ok);
  }
  return out;
}

}  // namespace fusion
