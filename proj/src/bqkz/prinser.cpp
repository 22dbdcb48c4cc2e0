#include "prinser.hpp"

namespace bqkz {

GammaMatrix PrincipalSeries::eta(const HeckeElem& h) const {
  const WeylGroup& W = H_->rs().W;
  GammaMatrix m(W.size());
  for (int v = 0; v < W.size(); ++v) {
    BernsteinElem col = H_->toBernstein(H_->multiply(h, H_->basis(H_->aw().finite(v))));
    for (const auto& [u, f] : col) m.at(u, v) = f;
  }
  return m;
}

std::vector<std::vector<Laurent>> PrincipalSeries::xiBasis() const {
  const WeylGroup& W = H_->rs().W;
  std::vector<std::vector<Laurent>> xi(W.size());
  for (int w = 0; w < W.size(); ++w) {
    BernsteinElem b = H_->intertwinerDual(w);
    std::vector<Laurent> col(W.size());
    for (const auto& [u, f] : b) col[u] = f;
    xi[w] = std::move(col);
  }
  return xi;
}

}  // namespace bqkz
