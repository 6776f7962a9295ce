#include "pdba/polyproj.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <optional>

namespace pdba {

namespace {

constexpr double kSingularRel = 1e-12;  // |det| below this times the normal
                                        // norms squared counts as singular
constexpr double kSignRel = 1e-12;      // slack for nu > 0 and residual <= 0

// Fallback slack. Near convergence the halfspace normals are differences of
// nearly equal iterates and carry ~1e-9 relative noise, so no subset passes
// the strict test even though the projection exists; a second pass at this
// tolerance accepts the candidate that is feasible up to that noise.
constexpr double kSignRelFallback = 1e-8;

// Solve A nu = rhs for a k x k principal Gram submatrix, k <= m. Cramer's
// rule for k <= 3, Gaussian elimination with partial pivoting above that.
// Returns false when the submatrix is singular under the scale-aware test.
bool solve_subset(const GramSystem& gs, const std::vector<std::size_t>& idx,
                  std::vector<double>& nu) {
  const std::size_t k = idx.size();
  const std::size_t m = gs.m;
  double scale = 1.0;
  for (std::size_t i : idx) scale *= gs.gram[i * m + i];
  const double det_floor = kSingularRel * std::max(scale, 1e-300);

  auto a = [&](std::size_t r, std::size_t c) { return gs.gram[idx[r] * m + idx[c]]; };
  auto b = [&](std::size_t r) { return gs.w[idx[r]]; };

  nu.assign(k, 0.0);
  if (k == 1) {
    const double det = a(0, 0);
    if (std::abs(det) <= det_floor) return false;
    nu[0] = b(0) / det;
    return true;
  }
  if (k == 2) {
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (std::abs(det) <= det_floor) return false;
    nu[0] = (b(0) * a(1, 1) - a(0, 1) * b(1)) / det;
    nu[1] = (a(0, 0) * b(1) - b(0) * a(1, 0)) / det;
    return true;
  }
  if (k == 3) {
    const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                       a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                       a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    if (std::abs(det) <= det_floor) return false;
    const double d0 = b(0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                      a(0, 1) * (b(1) * a(2, 2) - a(1, 2) * b(2)) +
                      a(0, 2) * (b(1) * a(2, 1) - a(1, 1) * b(2));
    const double d1 = a(0, 0) * (b(1) * a(2, 2) - a(1, 2) * b(2)) -
                      b(0) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                      a(0, 2) * (a(1, 0) * b(2) - b(1) * a(2, 0));
    const double d2 = a(0, 0) * (a(1, 1) * b(2) - b(1) * a(2, 1)) -
                      a(0, 1) * (a(1, 0) * b(2) - b(1) * a(2, 0)) +
                      b(0) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    nu[0] = d0 / det;
    nu[1] = d1 / det;
    nu[2] = d2 / det;
    return true;
  }

  // General small k.
  std::vector<double> mat(k * k);
  std::vector<double> rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    rhs[r] = b(r);
    for (std::size_t c = 0; c < k; ++c) mat[r * k + c] = a(r, c);
  }
  double det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(mat[r * k + col]) > std::abs(mat[piv * k + col])) piv = r;
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(mat[col * k + c], mat[piv * k + c]);
      std::swap(rhs[col], rhs[piv]);
      det = -det;
    }
    const double p = mat[col * k + col];
    if (p == 0.0) return false;
    det *= p;
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = mat[r * k + col] / p;
      for (std::size_t c = col; c < k; ++c) mat[r * k + c] -= f * mat[col * k + c];
      rhs[r] -= f * rhs[col];
    }
  }
  if (std::abs(det) <= det_floor) return false;
  for (std::size_t r = k; r-- > 0;) {
    double s = rhs[r];
    for (std::size_t c = r + 1; c < k; ++c) s -= mat[r * k + c] * nu[c];
    nu[r] = s / mat[r * k + r];
  }
  return true;
}

double w_inf_norm(const GramSystem& gs) {
  double m = 0.0;
  for (double v : gs.w) m = std::max(m, std::abs(v));
  return m;
}

// Evaluate one candidate subset: solve, test coefficient signs, test the
// remaining constraints at the candidate point. On success fills `out`.
bool try_subset(const PrimalDualPoint& x, const std::vector<Halfspace>& hs,
                const GramSystem& gs, const std::vector<std::size_t>& idx,
                double tol, PrimalDualPoint& out, SubsetCertificate* cert) {
  std::vector<double> nu;
  if (!solve_subset(gs, idx, nu)) return false;
  for (double c : nu)
    if (!(c > -tol)) return false;

  PrimalDualPoint candidate = x;
  for (std::size_t j = 0; j < idx.size(); ++j)
    add_scaled(-nu[j], hs[idx[j]].normal, candidate);

  std::vector<double> residuals;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (std::find(idx.begin(), idx.end(), i) != idx.end()) continue;
    const double r = hs[i].violation(candidate);
    if (!(r <= tol)) return false;
    residuals.push_back(r);
  }
  out = std::move(candidate);
  if (cert) {
    cert->subset = idx;
    cert->coeffs = std::move(nu);
    cert->residuals = std::move(residuals);
  }
  return true;
}

// All nonempty subsets of {0..m-1} ordered by cardinality, then
// lexicographically. The accepted subset gives the unique projection, so any
// fixed order is fine; this one is reproducible.
std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t m) {
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    subsets.push_back(std::move(idx));
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return subsets;
}

std::string dump_system(const GramSystem& gs) {
  std::string s = "G =";
  char buf[64];
  for (std::size_t i = 0; i < gs.m; ++i) {
    s += " [";
    for (std::size_t j = 0; j < gs.m; ++j) {
      std::snprintf(buf, sizeof buf, " %.17g", gs.gram[i * gs.m + j]);
      s += buf;
    }
    s += " ]";
  }
  s += "; w =";
  for (std::size_t i = 0; i < gs.m; ++i) {
    std::snprintf(buf, sizeof buf, " %.17g", gs.w[i]);
    s += buf;
  }
  return s;
}

std::vector<Halfspace> drop_degenerate(const std::vector<Halfspace>& hs,
                                       std::vector<std::size_t>* orig_index) {
  std::vector<Halfspace> active;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i].degenerate) continue;
    active.push_back(hs[i]);
    if (orig_index) orig_index->push_back(i);
  }
  return active;
}

// Runs the subset search: the preferred order at the strict tolerance first,
// then the full enumeration at the strict tolerance, finally the full
// enumeration at the fallback tolerance. The fallback stages are shared by
// both public entry points so they cannot disagree once strictness fails.
PrimalDualPoint project_with_order(const PrimalDualPoint& x,
                                   const std::vector<Halfspace>& hs,
                                   const std::vector<std::vector<std::size_t>>& order,
                                   SubsetCertificate* cert) {
  const GramSystem gs = gram_assemble(x, hs);

  bool inside = true;
  for (double wi : gs.w)
    if (wi > 0.0) {
      inside = false;
      break;
    }
  if (inside) {
    if (cert) *cert = SubsetCertificate{};
    return x;
  }

  const double w_scale = 1.0 + w_inf_norm(gs);
  PrimalDualPoint out;
  for (const auto& idx : order)
    if (try_subset(x, hs, gs, idx, kSignRel * w_scale, out, cert)) return out;

  const auto all = enumerate_subsets(hs.size());
  if (all.size() != order.size())
    for (const auto& idx : all)
      if (try_subset(x, hs, gs, idx, kSignRel * w_scale, out, cert)) return out;
  for (const auto& idx : all)
    if (try_subset(x, hs, gs, idx, kSignRelFallback * w_scale, out, cert)) return out;

  throw InfeasibleProjectionError(
      "no halfspace subset certifies a projection (empty intersection or "
      "numerical degeneracy); " +
      dump_system(gs));
}

}  // namespace

GramSystem gram_assemble(const PrimalDualPoint& x, const std::vector<Halfspace>& hs) {
  GramSystem gs;
  gs.m = hs.size();
  gs.gram.assign(gs.m * gs.m, 0.0);
  gs.w.assign(gs.m, 0.0);
  for (std::size_t i = 0; i < gs.m; ++i) {
    assert(!hs[i].degenerate);
    gs.w[i] = inner(x, hs[i].normal) - hs[i].offset;
    for (std::size_t j = i; j < gs.m; ++j) {
      const double g = inner(hs[i].normal, hs[j].normal);
      gs.gram[i * gs.m + j] = g;
      gs.gram[j * gs.m + i] = g;
    }
  }
  return gs;
}

PrimalDualPoint project_onto_intersection(const PrimalDualPoint& x,
                                          const std::vector<Halfspace>& hs,
                                          SubsetCertificate* cert) {
  const std::vector<Halfspace> active = drop_degenerate(hs, nullptr);
  if (active.empty()) {
    if (cert) *cert = SubsetCertificate{};
    return x;
  }
  return project_with_order(x, active, enumerate_subsets(active.size()), cert);
}

PrimalDualPoint project_haugazeau(const PrimalDualPoint& x0,
                                  const std::vector<Halfspace>& hs) {
  if (hs.size() > 3)
    throw std::invalid_argument("Haugazeau projection expects at most 3 halfspaces");

  std::vector<std::size_t> orig;
  const std::vector<Halfspace> active = drop_degenerate(hs, &orig);
  if (active.empty()) return x0;

  // The reduced search applies when the second canonical halfspace survived;
  // it requires x0's own cut H(x0,x_n) at slot 0 and/or the memory cut at
  // slot 2 to keep their structural roles.
  std::optional<std::vector<std::vector<std::size_t>>> order;
  if (orig.size() == 3) {
    order = {{1}, {0, 1}, {1, 2}, {0, 1, 2}};
  } else if (orig.size() == 2 && orig[0] == 0 && orig[1] == 1) {
    order = {{1}, {0, 1}};
  }
  if (!order)
    return project_with_order(x0, active, enumerate_subsets(active.size()), nullptr);

#ifndef NDEBUG
  {
    // The skipped subsets never certify for this halfspace structure. The
    // strict margins behind that argument scale with the normal norms, so
    // the check is only meaningful while those norms are commensurate; in
    // the stagnating tail of a run the cut normals shrink many orders of
    // magnitude below ||x0 - x_n|| and the margins fall under the sign
    // tolerance.
    const GramSystem gs = gram_assemble(x0, active);
    double min_diag = gs.gram[0], max_diag = gs.gram[0];
    for (std::size_t i = 1; i < gs.m; ++i) {
      min_diag = std::min(min_diag, gs.gram[i * gs.m + i]);
      max_diag = std::max(max_diag, gs.gram[i * gs.m + i]);
    }
    bool outside = false;
    for (double wi : gs.w) outside = outside || wi > 0.0;
    if (outside && max_diag <= 1e10 * min_diag) {
      const double tol = kSignRel * (1.0 + w_inf_norm(gs));
      std::vector<std::vector<std::size_t>> excluded = {{0}};
      if (active.size() == 3) {
        excluded.push_back({2});
        excluded.push_back({0, 2});
      }
      PrimalDualPoint scratch;
      for (const auto& idx : excluded)
        assert(!try_subset(x0, active, gs, idx, tol, scratch, nullptr));
    }
  }
#endif

  return project_with_order(x0, active, *order, nullptr);
}

}  // namespace pdba
