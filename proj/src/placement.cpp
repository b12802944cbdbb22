#include "pass/placement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pass {

PlacementObjective PlacementObjective::dynamic(UserFrame frame, Vector power, SplitVector delta,
                                               const SystemConfig& cfg) {
  PlacementObjective obj;
  obj.mode = PlacementMode::dynamic;
  obj.sum_power.push_back(power.sum() + frame.num_users() * cfg.circuit_power);
  obj.frames.push_back(std::move(frame));
  obj.powers.push_back(std::move(power));
  obj.delta = std::move(delta);
  obj.config = cfg;
  return obj;
}

PlacementObjective PlacementObjective::static_window(std::vector<UserFrame> frames,
                                                     std::vector<Vector> powers,
                                                     SplitVector delta, const SystemConfig& cfg) {
  PlacementObjective obj;
  obj.mode = PlacementMode::static_window;
  for (std::size_t i = 0; i < frames.size(); ++i)
    obj.sum_power.push_back(powers.at(i).sum() + frames[i].num_users() * cfg.circuit_power);
  obj.frames = std::move(frames);
  obj.powers = std::move(powers);
  obj.delta = std::move(delta);
  obj.config = cfg;
  return obj;
}

double PlacementObjective::weight(std::size_t i) const {
  if (mode == PlacementMode::dynamic) return 1.0;
  return 1.0 / (static_cast<double>(frames.size()) * sum_power[i]);
}

void PlacementObjective::validate() const {
  if (frames.empty()) throw std::invalid_argument("placement objective needs at least one frame");
  if (mode == PlacementMode::dynamic && frames.size() != 1)
    throw std::invalid_argument("dynamic placement takes exactly one frame");
  if (powers.size() != frames.size() || sum_power.size() != frames.size())
    throw std::invalid_argument("placement objective: one power vector per frame required");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (powers[i].size() != frames[i].num_users() || frames[i].gamma.size() != powers[i].size())
      throw std::invalid_argument("placement objective: inconsistent user count");
    if (!(sum_power[i] > 0.0)) throw std::invalid_argument("P_i^sum must be > 0");
  }
}

GridSpec GridSpec::uniform(double length, int q) {
  if (q < 2) throw std::invalid_argument("grid needs at least two points");
  GridSpec grid;
  grid.points.resize(q);
  for (int i = 0; i < q; ++i) grid.points(i) = length * i / (q - 1);
  grid.points(q - 1) = length;
  return grid;
}

namespace {

double objective_from_channels(const PlacementObjective& objective,
                               const std::vector<CVector>& combined) {
  const double scale = log_scale(objective.config.log_base);
  double total = 0.0;
  for (std::size_t i = 0; i < objective.frames.size(); ++i) {
    const UserFrame& frame = objective.frames[i];
    double rates = 0.0;
    for (Index k = 0; k < frame.num_users(); ++k)
      rates += std::log1p(frame.gamma(k) * objective.powers[i](k) * std::norm(combined[i](k)));
    total += objective.weight(i) * rates * scale;
  }
  return total;
}

}  // namespace

std::vector<CVector> leave_one_out_sum(const PlacementObjective& objective, const Layout& layout,
                                       Index r) {
  objective.validate();
  if (r < 0 || r >= layout.size()) throw std::out_of_range("element index out of range");
  Vector weights = objective.delta.effective();
  weights(r) = 0.0;
  std::vector<CVector> tau;
  for (const UserFrame& frame : objective.frames)
    tau.push_back(response_matrix(frame, layout.positions(), objective.config) *
                  weights.cast<Complex>());
  return tau;
}

double scalar_objective(const PlacementObjective& objective, const Layout& layout, Index r,
                        double x) {
  std::vector<CVector> combined = leave_one_out_sum(objective, layout, r);
  const double own = objective.delta.effective()(r);
  for (std::size_t i = 0; i < objective.frames.size(); ++i)
    for (Index k = 0; k < objective.frames[i].num_users(); ++k)
      combined[i](k) += own * element_response(objective.frames[i].user(k), x, objective.config);
  return objective_from_channels(objective, combined);
}

double placement_value(const PlacementObjective& objective, const Layout& layout) {
  objective.validate();
  const CVector weights = objective.delta.effective().cast<Complex>();
  std::vector<CVector> combined;
  for (const UserFrame& frame : objective.frames)
    combined.push_back(response_matrix(frame, layout.positions(), objective.config) * weights);
  return objective_from_channels(objective, combined);
}

PlacementSweep sweep_locations(const PlacementObjective& objective, const Layout& layout_init,
                               const GridSpec& grid) {
  objective.validate();
  const SystemConfig& cfg = objective.config;
  const Index n_el = layout_init.size();
  if (n_el != objective.delta.size())
    throw std::invalid_argument("layout and split vector sizes differ");
  if (!is_feasible(layout_init, cfg.waveguide_length, cfg.spacing()))
    throw std::invalid_argument("initial layout is not feasible");

  const double spacing = cfg.spacing();
  const double scale = log_scale(cfg.log_base);
  const Vector amp = objective.delta.effective();
  const Index q = grid.points.size();

  // Flatten (frame, user) pairs into one "link" axis.
  std::vector<double> link_weight;
  std::vector<double> link_snr;  // Gamma_k P_{k,i}
  std::vector<Point3> link_user;
  for (std::size_t i = 0; i < objective.frames.size(); ++i) {
    const UserFrame& frame = objective.frames[i];
    for (Index k = 0; k < frame.num_users(); ++k) {
      link_weight.push_back(objective.weight(i));
      link_snr.push_back(frame.gamma(k) * objective.powers[i](k));
      link_user.push_back(frame.user(k));
    }
  }
  const Index links = static_cast<Index>(link_user.size());

  using RowMajorC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajorC grid_eta(q, links);
  for (Index g = 0; g < q; ++g)
    for (Index l = 0; l < links; ++l)
      grid_eta(g, l) = element_response(link_user[l], grid.points(g), cfg);

  Vector pos = layout_init.positions();
  CMatrix elem_eta(links, n_el);  // by element identity
  for (Index n = 0; n < n_el; ++n)
    for (Index l = 0; l < links; ++l) elem_eta(l, n) = element_response(link_user[l], pos(n), cfg);

  auto score = [&](const CVector& h) {
    double v = 0.0;
    for (Index l = 0; l < links; ++l) v += link_weight[l] * std::log1p(link_snr[l] * std::norm(h(l)));
    return v * scale;
  };

  PlacementSweep out;
  {
    std::vector<Index> order(n_el);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return pos(a) < pos(b); });
    CVector h = CVector::Zero(links);
    for (Index s = 0; s < n_el; ++s) h += amp(s) * elem_eta.col(order[s]);
    out.step_values.push_back(score(h));
  }

  std::vector<Index> others;
  CMatrix prefix(links, n_el);  // sum_{j<s} A_j eta(o_j)
  CMatrix suffix(links, n_el);  // sum_{j>=s} A_{j+1} eta(o_j)
  CVector h(links);
  for (Index r = 0; r < n_el; ++r) {
    others.clear();
    for (Index n = 0; n < n_el; ++n)
      if (n != r) others.push_back(n);
    std::sort(others.begin(), others.end(), [&](Index a, Index b) { return pos(a) < pos(b); });
    const Index n_other = n_el - 1;

    prefix.col(0).setZero();
    for (Index s = 0; s < n_other; ++s)
      prefix.col(s + 1) = prefix.col(s) + amp(s) * elem_eta.col(others[s]);
    suffix.col(n_other).setZero();
    for (Index s = n_other - 1; s >= 0; --s)
      suffix.col(s) = suffix.col(s + 1) + amp(s + 1) * elem_eta.col(others[s]);

    auto evaluate = [&](Index rank, const auto& eta) {
      h = prefix.col(rank) + suffix.col(rank) + amp(rank) * eta;
      return score(h);
    };

    Index rank = 0;
    while (rank < n_other && pos(others[rank]) < pos(r)) ++rank;
    double best_x = pos(r);
    double best_v = evaluate(rank, elem_eta.col(r));
    Index best_g = -1;

    rank = 0;
    for (Index g = 0; g < q; ++g) {
      const double x = grid.points(g);
      while (rank < n_other && pos(others[rank]) < x) ++rank;
      if (rank > 0 && !(x - pos(others[rank - 1]) >= spacing)) continue;
      if (rank < n_other && !(pos(others[rank]) - x >= spacing)) continue;
      const double v = evaluate(rank, grid_eta.row(g).transpose());
      if (v > best_v || (v == best_v && x < best_x)) {
        best_v = v;
        best_x = x;
        best_g = g;
      }
    }

    pos(r) = best_x;
    if (best_g >= 0) elem_eta.col(r) = grid_eta.row(best_g).transpose();
    out.step_values.push_back(best_v);
  }

  std::sort(pos.data(), pos.data() + pos.size());
  out.layout = Layout(std::move(pos));
  return out;
}

Layout tune_locations(const PlacementObjective& objective, const Layout& layout_init,
                      const GridSpec& grid) {
  return sweep_locations(objective, layout_init, grid).layout;
}

}  // namespace pass
