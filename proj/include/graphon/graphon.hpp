#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace graphon {

inline constexpr int kDefaultQuadratureGrid = 1001;

// Symmetric function w: [0,1]^2 -> [0,1].  Implementations are immutable
// after construction and safe to evaluate from many threads.
class Graphon {
 public:
  virtual ~Graphon() = default;

  // w(u,v); callers guarantee u,v in [0,1].
  virtual double value(double u, double v) const = 0;

  // Batched row w(u, vs[j]); implementations may override with a fast path.
  virtual void value_row(double u, const double* vs, int count, double* out) const;

  // g(u) in closed form when the implementation has one.
  virtual std::optional<double> closed_form_marginal(double /*u*/) const { return std::nullopt; }

  virtual std::string describe() const = 0;
};

// w(u,v) with domain validation.
double evaluate(const Graphon& w, double u, double v);

// g(u) = integral of w(u,.) over [0,1]; uses the closed form when the
// graphon has one, otherwise composite trapezoid quadrature.
double marginal(const Graphon& w, double u, int quadrature_grid = kDefaultQuadratureGrid);

// Analytic graphon with an optional closed-form marginal.
class AnalyticGraphon final : public Graphon {
 public:
  using Surface = std::function<double(double, double)>;
  using Margin = std::function<double(double)>;

  AnalyticGraphon(std::string id, Surface surface, Margin margin = nullptr);

  double value(double u, double v) const override { return surface_(u, v); }
  std::optional<double> closed_form_marginal(double u) const override;
  std::string describe() const override { return id_; }

 private:
  std::string id_;
  Surface surface_;
  Margin margin_;
};

// Registry lookup: "w1", "w2" or "const:<c>" with c in [0,1].
std::shared_ptr<Graphon> make_graphon(const std::string& id);

}  // namespace graphon
