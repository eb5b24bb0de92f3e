#include "slicelab/moments.hpp"

#include "slicelab/sphere_search.hpp"

#include <cmath>
#include <limits>

namespace slicelab {

namespace {

void check_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("p must be positive and finite");
}

SphereSearchOptions search_options(const IntegrationConfig& cfg) {
  SphereSearchOptions opt;
  opt.random_starts = cfg.random_starts;
  opt.local_searches = cfg.local_searches;
  opt.max_evals = cfg.search_evals;
  opt.seed = cfg.seed;
  return opt;
}

}  // namespace

ValueWithError moment(const StarBody& body, const Density& f, double p, const Vec& xi, const IntegrationConfig& cfg) {
  check_p(p);
  require_dim(xi, body.dim(), "moment direction");
  if (std::abs(xi.norm() - 1.0) > 1e-9) throw InputError("moment direction must be a unit vector");
  return PolarMomentKernel(body, f, p, cfg).moment(xi);
}

MomentResult min_moment(const StarBody& body, const Density& f, double p, const IntegrationConfig& cfg) {
  check_p(p);
  return min_moment(PolarMomentKernel(body, f, p, cfg), body, cfg);
}

MomentResult min_moment(const PolarMomentKernel& kernel, const StarBody& body, const IntegrationConfig& cfg) {
  const int n = body.dim();
  const double p = kernel.p();
  MomentResult r;
  r.p = p;
  if (p < 1.0) r.notes.push_back("p < 1 is outside the main range p >= 1");
  r.mass = kernel.mass();
  if (!(r.mass.value > 0.0)) throw DegenerateError("min_moment: density has zero mass on the body");

  const auto search = minimize_on_sphere([&](const Vec& xi) { return kernel.moment_value(xi); }, n,
                                         search_options(cfg));
  r.direction = search.direction;
  r.value = kernel.moment(search.direction);
  r.relative_spread = search.relative_spread;
  r.evaluations = search.evaluations;
  r.volume = volume(body, cfg);
  r.normalized_gamma = std::pow(r.value.value / (std::pow(r.volume.value, p / n) * r.mass.value), 1.0 / p);
  if (r.mass.status != Status::ok || r.volume.status != Status::ok) r.value.status = Status::tolerance_not_met;
  return r;
}

nlohmann::json MomentResult::to_json() const {
  return {{"direction", std::vector<double>(direction.data(), direction.data() + direction.size())},
          {"value", value.to_json()},
          {"p", p},
          {"normalized_gamma", normalized_gamma},
          {"volume", volume.to_json()},
          {"mass", mass.to_json()},
          {"relative_spread", relative_spread},
          {"evaluations", evaluations},
          {"notes", notes}};
}

Thm12Report thm12_ratio(const StarBody& body, const Density& f, double p, const std::vector<Witness>& witnesses,
                        const IntegrationConfig& cfg) {
  check_p(p);
  if (witnesses.empty()) throw InputError("thm12_ratio: witness list is empty");
  const int n = body.dim();
  Thm12Report r;
  r.p = p;
  r.v_hat = std::numeric_limits<double>::infinity();
  for (const auto& w : witnesses) {
    if (w.body().dim() != n) throw DimensionError("thm12_ratio: witness dimension differs from the body");
    if (std::abs(w.p() - p) > 1e-12) throw InputError("thm12_ratio: witness '" + w.tag() + "' has a different p");
    const Containment c = contains_body(body, w.body(), cfg);
    if (!std::isfinite(c.margin) || !(c.margin > 0.0)) continue;
    WitnessVolume v{w.tag(), c.margin, c.margin * std::pow(reference_volume(w.body(), cfg), 1.0 / n)};
    r.witnesses.push_back(v);
    if (v.root_volume < r.v_hat) {
      r.v_hat = v.root_volume;
      r.best_witness = v.tag;
      r.scaling = v.scaling;
    }
  }
  if (!std::isfinite(r.v_hat)) throw DegenerateError("thm12_ratio: no witness contains the body after scaling");
  r.min = min_moment(body, f, p, cfg);
  r.min_moment_normalized = r.min.value.value / r.min.mass.value;
  r.ratio = std::pow(r.min_moment_normalized, 1.0 / p) / (std::sqrt(p) * r.v_hat);
  return r;
}

nlohmann::json Thm12Report::to_json() const {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) ws.push_back({{"tag", w.tag}, {"scaling", w.scaling}, {"root_volume", w.root_volume}});
  return {{"p", p},
          {"min_moment_normalized", min_moment_normalized},
          {"v_hat", v_hat},
          {"best_witness", best_witness},
          {"scaling", scaling},
          {"ratio", ratio},
          {"min_moment", min.to_json()},
          {"witnesses", ws}};
}

}  // namespace slicelab
