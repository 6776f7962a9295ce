#include "pdba/solver.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "pdba/kernels.hpp"
#include "pdba/polyproj.hpp"

namespace pdba {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Fejer: return "fejer";
    case Variant::C0: return "c0";
    case Variant::C1: return "c1";
    case Variant::C2: return "c2";
    case Variant::C3: return "c3";
  }
  return "unknown";
}

Variant variant_from_string(const std::string& s) {
  if (s == "fejer") return Variant::Fejer;
  if (s == "c0") return Variant::C0;
  if (s == "c1") return Variant::C1;
  if (s == "c2") return Variant::C2;
  if (s == "c3") return Variant::C3;
  throw std::invalid_argument("unknown variant '" + s +
                              "' (expected fejer, c0, c1, c2 or c3)");
}

namespace {

void check_lambda(double lambda, Variant variant) {
  if (variant == Variant::Fejer) {
    if (!(lambda > 0.0 && lambda < 2.0))
      throw std::invalid_argument("fejer mode needs lambda in (0,2)");
  } else if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("best-approximation modes need lambda in (0,1]");
  }
}

void check_prox_param(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("variant c3 needs tau in (0,1)");
}

}  // namespace

void SolverConfig::validate() const {
  if (!lambda_schedule) check_lambda(lambda, variant);
  if (!gamma_schedule) check_prox_param(gamma, "gamma");
  if (!mu_schedule) check_prox_param(mu, "mu");
  if (variant == Variant::C3 && !tau_schedule) check_tau(tau);
  if (!(eps_tol > 0.0)) throw std::invalid_argument("eps_tol must be positive");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be nonnegative");
}

double SolverConfig::lambda_at(int n) const {
  const double v = lambda_schedule ? lambda_schedule(n) : lambda;
  check_lambda(v, variant);
  return v;
}

double SolverConfig::gamma_at(int n) const {
  const double v = gamma_schedule ? gamma_schedule(n) : gamma;
  check_prox_param(v, "gamma");
  return v;
}

double SolverConfig::mu_at(int n) const {
  const double v = mu_schedule ? mu_schedule(n) : mu;
  check_prox_param(v, "mu");
  return v;
}

double SolverConfig::tau_at(int n) const {
  const double v = tau_schedule ? tau_schedule(n) : tau;
  check_tau(v);
  return v;
}

FejerCut fejer_cut(const ProblemInstance& problem, const PrimalDualPoint& x,
                   double gamma, double mu) {
  check_prox_param(gamma, "gamma");
  check_prox_param(mu, "mu");
  const std::size_t m = problem.num_primal();
  const std::size_t kk = problem.num_dual();

  FejerCut cut;
  cut.primal.assign(problem.total_primal_dim(), 0.0);
  cut.primal_subgrad.assign(problem.total_primal_dim(), 0.0);
  cut.dual.assign(problem.total_dual_dim(), 0.0);
  cut.dual_subgrad.assign(problem.total_dual_dim(), 0.0);
  PrimalDualPoint normal = problem.make_point();

  double eta = 0.0;
  std::span<const double> pall(x.p);
  std::span<const double> vall(x.v);

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t off = problem.primal_offsets[i];
    const std::size_t dim = problem.primal_dims[i];
    auto p_i = pall.subspan(off, dim);

    // lstar = sum_k L*_{ki} v_k
    std::vector<double> lstar(dim, 0.0), tmp(dim);
    for (std::size_t k = 0; k < kk; ++k) {
      if (!problem.L[i][k]) continue;
      problem.L[i][k]->adjoint(vall.subspan(problem.dual_offsets[k], problem.dual_dims[k]),
                               tmp);
      kernels::axpy_inplace(1.0, tmp, lstar);
    }

    std::vector<double> arg(dim);
    kernels::axpy(-gamma, lstar, p_i, arg);  // p_i - gamma * lstar
    auto a_i = std::span<double>(cut.primal).subspan(off, dim);
    problem.fs[i]->apply(arg, gamma, a_i);

    auto astar_i = std::span<double>(cut.primal_subgrad).subspan(off, dim);
    for (std::size_t j = 0; j < dim; ++j)
      astar_i[j] = (p_i[j] - a_i[j]) / gamma - lstar[j];

    eta += kernels::dot(a_i, astar_i);
  }

  for (std::size_t k = 0; k < kk; ++k) {
    const std::size_t off = problem.dual_offsets[k];
    const std::size_t dim = problem.dual_dims[k];
    auto v_k = vall.subspan(off, dim);

    // lp = sum_i L_{ik} p_i, la = sum_i L_{ik} a_i
    std::vector<double> lp(dim, 0.0), la(dim, 0.0), tmp(dim);
    for (std::size_t i = 0; i < m; ++i) {
      if (!problem.L[i][k]) continue;
      const auto& op = *problem.L[i][k];
      op.apply(pall.subspan(problem.primal_offsets[i], problem.primal_dims[i]), tmp);
      kernels::axpy_inplace(1.0, tmp, lp);
      op.apply(std::span<const double>(cut.primal)
                   .subspan(problem.primal_offsets[i], problem.primal_dims[i]),
               tmp);
      kernels::axpy_inplace(1.0, tmp, la);
    }

    std::vector<double> arg(dim);
    kernels::axpy(mu, v_k, lp, arg);  // lp + mu * v_k
    auto b_k = std::span<double>(cut.dual).subspan(off, dim);
    problem.gs[k]->apply(arg, mu, b_k);

    auto bstar_k = std::span<double>(cut.dual_subgrad).subspan(off, dim);
    for (std::size_t j = 0; j < dim; ++j)
      bstar_k[j] = (lp[j] - b_k[j]) / mu + v_k[j];

    eta += kernels::dot(b_k, bstar_k);

    // dual part of the normal: b_k - sum_i L_{ik} a_i
    auto s_dual = std::span<double>(normal.v).subspan(off, dim);
    kernels::sub(b_k, la, s_dual);
  }

  // primal part of the normal: a*_i + sum_k L*_{ki} b*_k
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t off = problem.primal_offsets[i];
    const std::size_t dim = problem.primal_dims[i];
    auto s_primal = std::span<double>(normal.p).subspan(off, dim);
    kernels::copy(std::span<const double>(cut.primal_subgrad).subspan(off, dim),
                  s_primal);
    std::vector<double> tmp(dim);
    for (std::size_t k = 0; k < kk; ++k) {
      if (!problem.L[i][k]) continue;
      problem.L[i][k]->adjoint(std::span<const double>(cut.dual_subgrad)
                                   .subspan(problem.dual_offsets[k], problem.dual_dims[k]),
                               tmp);
      kernels::axpy_inplace(1.0, tmp, s_primal);
    }
  }

  cut.normal_norm_sq = norm_sq(normal);
  cut.halfspace.normal = std::move(normal);
  cut.halfspace.offset = eta;
  cut.halfspace.degenerate = false;
  return cut;
}

PrimalDualPoint fejer_step(const PrimalDualPoint& x, const FejerCut& cut,
                           double lambda) {
  if (!(lambda > 0.0 && lambda <= 2.0))
    throw std::invalid_argument("fejer_step needs lambda in (0,2]");
  if (cut.normal_norm_sq <= 0.0)
    throw std::logic_error("fejer_step on a zero cut normal (exact solution)");
  const double viol = cut.halfspace.violation(x);
  PrimalDualPoint out = x;
  if (viol > 0.0) add_scaled(-lambda * viol / cut.normal_norm_sq,
                             cut.halfspace.normal, out);
  return out;
}

std::vector<Halfspace> memory_set(Variant variant, const SolverState& state,
                                  double tau) {
  std::vector<Halfspace> cn;
  cn.push_back(halfspace_from_points(state.x_cur, state.x_half));
  if (variant == Variant::C0 || variant == Variant::Fejer || state.n < 1) return cn;

  Halfspace memory;
  switch (variant) {
    case Variant::C1:
      memory = halfspace_from_points(state.x_prev, state.x_half_prev);
      break;
    case Variant::C2:
      memory = halfspace_from_points(state.x0, state.x_prev);
      break;
    case Variant::C3:
      memory = halfspace_from_points(
          state.x0, convex_combination(state.x_cur, state.x_prev, tau));
      break;
    default:
      return cn;
  }
  if (!memory.degenerate) cn.push_back(std::move(memory));
  return cn;
}

PrimalDualPoint haugazeau_step(const SolverState& state,
                               const std::vector<Halfspace>& cn) {
  std::vector<Halfspace> hs;
  hs.reserve(cn.size() + 1);
  hs.push_back(halfspace_from_points(state.x0, state.x_cur));
  for (const auto& h : cn) hs.push_back(h);
  PrimalDualPoint next = project_haugazeau(state.x0, hs);
#ifndef NDEBUG
  for (const auto& h : hs)
    assert(h.contains(next, 1e-9 * (1.0 + std::abs(h.offset))));
#endif
  return next;
}

std::pair<PrimalDualPoint, SolveTrace> solve(const ProblemInstance& problem,
                                             const PrimalDualPoint& x0,
                                             const SolverConfig& config,
                                             const Observer& observer) {
  config.validate();
  if (x0.p.size() != problem.total_primal_dim() ||
      x0.v.size() != problem.total_dual_dim())
    throw std::invalid_argument("x0 does not match the problem dimensions");

  SolverState state;
  state.x0 = x0;
  state.x_prev = x0;
  state.x_half_prev = x0;
  state.x_cur = x0;

  SolveTrace trace;
  int tol_streak = 0;
  bool emitted_final = false;

  for (int n = 0; n < config.max_iters; ++n) {
    const double gamma = config.gamma_at(n);
    const double mu = config.mu_at(n);
    const double lambda = config.lambda_at(n);

    TraceRecord rec;
    rec.iter = n;
    rec.dist_x0 = dist(state.x_cur, state.x0);
    rec.neg_dist_sq = -rec.dist_x0 * rec.dist_x0;
    if (config.track_attraction && config.variant != Variant::Fejer && n >= 1)
      rec.attraction_gain =
          attraction_gain(state.x0, state.x_prev, state.x_half_prev, state.x_cur)
              .second;

    FejerCut cut = fejer_cut(problem, state.x_cur, gamma, mu);
    const double normal_norm = std::sqrt(cut.normal_norm_sq);
    if (normal_norm <= 1e-12 * (1.0 + norm(state.x_cur))) {
      state.status = Termination::ExactZero;
      rec.cut_residual = 0.0;
      if (observer) observer(n, state, &cut, rec);
      trace.records.push_back(rec);
      emitted_final = true;
      break;
    }
    rec.cut_residual =
        std::max(0.0, cut.halfspace.violation(state.x_cur)) / normal_norm;

    state.x_half = fejer_step(state.x_cur, cut, lambda);
    rec.half_step_norm = dist(state.x_half, state.x_cur);

    PrimalDualPoint x_next;
    if (config.variant == Variant::Fejer) {
      x_next = state.x_half;
    } else {
      const double tau =
          config.variant == Variant::C3 ? config.tau_at(n) : config.tau;
      x_next = haugazeau_step(state, memory_set(config.variant, state, tau));
    }
    rec.step_norm = dist(x_next, state.x_cur);

    double rel_change;
    if (config.tolerance_on_dual) {
      rel_change = dist(x_next, state.x_cur) / (1.0 + norm(state.x_cur));
    } else {
      rel_change = std::sqrt(kernels::sum_sq_diff(x_next.p, state.x_cur.p)) /
                   (1.0 + std::sqrt(kernels::dot(state.x_cur.p, state.x_cur.p)));
    }
    tol_streak = rel_change < config.eps_tol ? tol_streak + 1 : 0;

    state.x_prev = std::move(state.x_cur);
    state.x_half_prev = state.x_half;
    state.x_cur = std::move(x_next);
    state.n = n + 1;

    if (observer) observer(n, state, &cut, rec);
    trace.records.push_back(rec);

    if (tol_streak >= 2) {
      state.status = Termination::Tolerance;
      break;
    }
  }

  if (state.status == Termination::Running) state.status = Termination::MaxIters;

  if (!emitted_final) {
    TraceRecord rec;
    rec.iter = state.n;
    rec.dist_x0 = dist(state.x_cur, state.x0);
    rec.neg_dist_sq = -rec.dist_x0 * rec.dist_x0;
    if (config.track_attraction && config.variant != Variant::Fejer && state.n >= 1)
      rec.attraction_gain =
          attraction_gain(state.x0, state.x_prev, state.x_half_prev, state.x_cur)
              .second;
    if (observer) observer(state.n, state, nullptr, rec);
    trace.records.push_back(rec);
  }

  trace.status = state.status;
  trace.iterations = state.n;
  return {state.x_cur, trace};
}

}  // namespace pdba
