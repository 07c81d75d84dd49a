#ifndef JETCALC_SMOOTH_HPP
#define JETCALC_SMOOTH_HPP

#include <string>
#include <utility>
#include <vector>

#include "jetcalc/errors.hpp"
#include "jetcalc/groebner.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {

/// Matrix of formal partials: rows are generators, columns base variables.
struct JacobianMatrix {
  ContextPtr ctx;
  FieldPtr field;
  std::vector<std::vector<Polynomial>> entries;  // [generator][variable]

  const Polynomial& at(std::size_t g, std::size_t v) const {
    return entries[g][v];
  }
  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

inline JacobianMatrix jacobian_matrix(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw Error("jacobian_matrix needs generators");
  JacobianMatrix J;
  J.ctx = gens[0].context();
  J.field = gens[0].field();
  for (const auto& g : gens) {
    check_same_context(g.context(), J.ctx);
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < J.ctx->size(); ++v)
      row.push_back(g.derivative(v));
    J.entries.push_back(std::move(row));
  }
  return J;
}

namespace detail {

inline Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m,
                           const ContextPtr& ctx, const FieldPtr& field) {
  std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ctx, field->one());
  if (n == 1) return m[0][0];
  Polynomial det = Polynomial::zero(ctx, field);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    Polynomial cof = m[0][c] * poly_det(minor, ctx, field);
    det = (c % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

/// Emits k-subsets of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(
                                const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace detail

/// Jacobian-criterion locus: the ideal generated by the input equations
/// together with all codim x codim minors of the Jacobian. Cuts out the
/// non-smooth locus when the generators define a complete intersection of
/// the declared codimension.
inline Ideal nonsmooth_ideal(const std::vector<Polynomial>& gens,
                             std::size_t codim) {
  if (gens.empty()) throw BadCodim("nonsmooth_ideal needs generators");
  JacobianMatrix J = jacobian_matrix(gens);
  if (codim < 1 || codim > std::min(J.rows(), J.cols()))
    throw BadCodim("codimension " + std::to_string(codim) +
                   " exceeds the Jacobian format " + std::to_string(J.rows()) +
                   "x" + std::to_string(J.cols()));
  std::vector<Polynomial> out = gens;
  detail::for_each_subset(J.rows(), codim, [&](const std::vector<std::size_t>&
                                                   rows) {
    detail::for_each_subset(
        J.cols(), codim, [&](const std::vector<std::size_t>& cols) {
          std::vector<std::vector<Polynomial>> m;
          for (std::size_t r : rows) {
            std::vector<Polynomial> row;
            for (std::size_t c : cols) row.push_back(J.entries[r][c]);
            m.push_back(std::move(row));
          }
          Polynomial d = detail::poly_det(m, J.ctx, J.field);
          if (!d.is_zero()) out.push_back(std::move(d));
        });
  });
  return Ideal(J.ctx, J.field, std::move(out));
}

}  // namespace jetcalc

#endif  // JETCALC_SMOOTH_HPP
