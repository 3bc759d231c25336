#include "graphon/graphon.hpp"

#include <cmath>
#include <stdexcept>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(name) + " outside [0,1]");
}

}  // namespace

void Graphon::value_row(double u, const double* vs, int count, double* out) const {
  for (int j = 0; j < count; ++j) out[j] = value(u, vs[j]);
}

double evaluate(const Graphon& w, double u, double v) {
  check_unit(u, "u");
  check_unit(v, "v");
  return w.value(u, v);
}

double marginal(const Graphon& w, double u, int quadrature_grid) {
  check_unit(u, "u");
  if (quadrature_grid < 2) throw InputError("quadrature grid must have at least 2 points");
  if (auto g = w.closed_form_marginal(u)) return *g;
  const int n = quadrature_grid;
  const double h = 1.0 / (n - 1);
  double acc = 0.5 * (w.value(u, 0.0) + w.value(u, 1.0));
  for (int i = 1; i + 1 < n; ++i) acc += w.value(u, i * h);
  return acc * h;
}

AnalyticGraphon::AnalyticGraphon(std::string id, Surface surface, Margin margin)
    : id_(std::move(id)), surface_(std::move(surface)), margin_(std::move(margin)) {}

std::optional<double> AnalyticGraphon::closed_form_marginal(double u) const {
  if (!margin_) return std::nullopt;
  return margin_(u);
}

std::shared_ptr<Graphon> make_graphon(const std::string& id) {
  if (id == "w1") {
    return std::make_shared<AnalyticGraphon>(
        "w1", [](double u, double v) { return 0.5 * (u + v); },
        [](double u) { return 0.5 * u + 0.25; });
  }
  if (id == "w2") {
    return std::make_shared<AnalyticGraphon>(
        "w2",
        [](double u, double v) { return 0.8 * (1.0 - u) * (1.0 - v) + 0.85 * u * v; },
        [](double u) { return 0.4 + 0.025 * u; });
  }
  if (id.rfind("const:", 0) == 0) {
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(id.substr(6), &used);
      if (used != id.size() - 6) throw InputError("trailing characters in constant graphon id");
    } catch (const std::logic_error&) {
      throw InputError("malformed constant graphon id: " + id);
    }
    if (!(c >= 0.0 && c <= 1.0)) throw InputError("constant graphon level must lie in [0,1]");
    return std::make_shared<AnalyticGraphon>(
        id, [c](double, double) { return c; }, [c](double) { return c; });
  }
  throw InputError("unknown graphon id: " + id);
}

}  // namespace graphon
