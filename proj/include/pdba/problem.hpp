#pragma once

#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdba/linop.hpp"
#include "pdba/point.hpp"
#include "pdba/prox.hpp"

namespace pdba {

// min over (p_1..p_M) of sum_i f_i(p_i) + sum_k g_k(sum_i L_{ik} p_i).
// The coupling grid holds L[i][k] : H_i -> G_k; a null entry is the zero
// operator and is skipped entirely.
struct ProblemInstance {
  std::vector<std::shared_ptr<const ProxFn>> fs;   // size M, over H_i
  std::vector<std::shared_ptr<const ProxFn>> gs;   // size K, over G_k
  std::vector<std::vector<std::shared_ptr<const LinOp>>> L;  // [i][k]

  std::size_t num_primal() const { return fs.size(); }
  std::size_t num_dual() const { return gs.size(); }

  std::vector<std::size_t> primal_dims, dual_dims;
  std::vector<std::size_t> primal_offsets, dual_offsets;  // derived

  // Fills dims/offsets from the prox functions and checks the grid shape and
  // every operator's domain/codomain against them.
  void finalize() {
    const std::size_t m = fs.size(), k = gs.size();
    if (L.size() != m) throw std::invalid_argument("operator grid must have M rows");
    primal_dims.resize(m);
    dual_dims.resize(k);
    for (std::size_t i = 0; i < m; ++i) primal_dims[i] = fs[i]->dim();
    for (std::size_t j = 0; j < k; ++j) dual_dims[j] = gs[j]->dim();
    primal_offsets.assign(m + 1, 0);
    dual_offsets.assign(k + 1, 0);
    std::partial_sum(primal_dims.begin(), primal_dims.end(), primal_offsets.begin() + 1);
    std::partial_sum(dual_dims.begin(), dual_dims.end(), dual_offsets.begin() + 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (L[i].size() != k)
        throw std::invalid_argument("operator grid must have K columns");
      for (std::size_t j = 0; j < k; ++j) {
        if (!L[i][j]) continue;
        if (L[i][j]->domain_dim() != primal_dims[i] ||
            L[i][j]->codomain_dim() != dual_dims[j])
          throw std::invalid_argument("operator shape mismatch in coupling grid");
      }
    }
  }

  std::size_t total_primal_dim() const { return primal_offsets.back(); }
  std::size_t total_dual_dim() const { return dual_offsets.back(); }

  PrimalDualPoint make_point() const {
    return PrimalDualPoint::zeros(total_primal_dim(), total_dual_dim());
  }

  std::span<double> primal_block(PrimalDualPoint& x, std::size_t i) const {
    return std::span<double>(x.p).subspan(primal_offsets[i], primal_dims[i]);
  }
  std::span<const double> primal_block(const PrimalDualPoint& x, std::size_t i) const {
    return std::span<const double>(x.p).subspan(primal_offsets[i], primal_dims[i]);
  }
  std::span<double> dual_block(PrimalDualPoint& x, std::size_t k) const {
    return std::span<double>(x.v).subspan(dual_offsets[k], dual_dims[k]);
  }
  std::span<const double> dual_block(const PrimalDualPoint& x, std::size_t k) const {
    return std::span<const double>(x.v).subspan(dual_offsets[k], dual_dims[k]);
  }
};

}  // namespace pdba
