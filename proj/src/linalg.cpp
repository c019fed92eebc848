#include "wres/linalg.hpp"

#include "wres/errors.hpp"

namespace wres {

namespace {

// Fraction-free forward elimination over cleared-integer rows: after step k
// each updated entry is (m(i,j)*pivot - m(i,k)*m(k,j)) / prev_pivot, which
// stays integral (Bareiss).  We keep entries as Rat but they remain integral
// through this phase; the benefit over plain Gauss is bounded intermediate
// numerators with no per-step gcd churn.
struct Forward {
  QMatrix m;
  std::vector<int> pivot_cols;
  std::vector<int> pivot_rows;
};

Forward forward_eliminate(QMatrix m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  // clear denominators per row
  for (auto& row : m) {
    Int l(1);
    for (const auto& x : row)
      if (x != 0) l = int_lcm(l, x.get_den());
    if (l != 1)
      for (auto& x : row) x *= Rat(l);
  }
  Forward out;
  Rat prev(1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    const Rat piv = m[r][c];
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * piv - m[i][c] * m[r][j]) / prev;
      m[i][c] = Rat(0);
    }
    prev = piv;
    out.pivot_cols.push_back((int)c);
    out.pivot_rows.push_back((int)r);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

}  // namespace

std::vector<int> rref(QMatrix& m) {
  Forward f = forward_eliminate(m);
  QMatrix& a = f.m;
  // back-substitute to reduced form over Q
  for (int k = (int)f.pivot_cols.size() - 1; k >= 0; --k) {
    int pr = f.pivot_rows[k];
    int pc = f.pivot_cols[k];
    Rat piv = a[pr][pc];
    for (size_t j = pc; j < a[pr].size(); ++j) a[pr][j] /= piv;
    for (int i = 0; i < pr; ++i) {
      Rat factor = a[i][pc];
      if (factor == 0) continue;
      for (size_t j = pc; j < a[i].size(); ++j) a[i][j] -= factor * a[pr][j];
    }
  }
  m = std::move(a);
  return f.pivot_cols;
}

int rank(QMatrix m) {
  if (m.empty()) return 0;
  return (int)forward_eliminate(std::move(m)).pivot_cols.size();
}

QMatrix kernel_basis(QMatrix m) {
  if (m.empty()) return {};
  const size_t cols = m[0].size();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  QMatrix basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[fc] = Rat(1);
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix invert(const QMatrix& m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw StructuralError("invert: matrix not square");
  QMatrix aug(n, std::vector<Rat>(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = Rat(1);
  }
  std::vector<int> pivots = rref(aug);
  if (pivots.size() != n || (n && pivots.back() != (int)n - 1))
    throw StructuralError("invert: singular matrix");
  QMatrix out(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  if (a.empty() || b.empty()) return {};
  const size_t n = a.size(), k = b.size(), mcols = b[0].size();
  QMatrix out(n, std::vector<Rat>(mcols, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw StructuralError("mat_mul: dimension mismatch");
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < mcols; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

}  // namespace wres
