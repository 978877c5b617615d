#include "itsg/metrics.hpp"

#include <cmath>

#include "itsg/demonstration.hpp"

namespace itsg {

double gra(const GraphTimeline& pred, const GraphTimeline& gt, const AnalysisConfig& cfg) {
  cfg.validate();
  if (pred.graphs.size() != gt.graphs.size())
    throw DataError("timelines differ in frame count");
  if (pred.graphs.empty()) throw DataError("empty timelines");
  long equal = 0;
  for (std::size_t k = 0; k < pred.graphs.size(); ++k)
    if (graph_equal(pred.graphs[k], gt.graphs[k], cfg.pos_tol)) ++equal;
  return static_cast<double>(equal) / static_cast<double>(pred.graphs.size());
}

double tsa(const std::vector<double>& pred_b, const std::vector<double>& gt_b, double tol,
           bool one_to_one) {
  if (gt_b.empty()) throw DataError("no reference boundaries");
  if (tol < 0.0) throw DataError("negative boundary tolerance");
  std::vector<bool> used(pred_b.size(), false);
  long hit = 0;
  for (double g : gt_b) {
    long best = -1;
    double best_d = tol;
    for (std::size_t i = 0; i < pred_b.size(); ++i) {
      if (one_to_one && used[i]) continue;
      const double d = std::abs(pred_b[i] - g);
      if (d <= best_d) {
        best_d = d;
        best = static_cast<long>(i);
      }
    }
    if (best >= 0) {
      ++hit;
      if (one_to_one) used[static_cast<std::size_t>(best)] = true;
    }
  }
  return static_cast<double>(hit) / static_cast<double>(gt_b.size());
}

double success_rate(long successes, long attempts) {
  if (attempts <= 0) throw DataError("success rate needs at least one attempt");
  if (successes < 0 || successes > attempts)
    throw DataError("successes outside [0, attempts]");
  return static_cast<double>(successes) / static_cast<double>(attempts);
}

PoseError6D pose_error_6d(const Eigen::Vector3d& p_est, const Eigen::Vector3d& p_gt,
                          double theta_err, double lambda) {
  if (lambda < 0.0) throw DataError("negative angular weight");
  if (theta_err < 0.0) throw DataError("negative angular error");
  PoseError6D e;
  e.pos = (p_est - p_gt).norm();
  e.ang = theta_err;
  e.combined = e.pos + lambda * e.ang;
  return e;
}

}  // namespace itsg
