// Evaluation metrics over timelines, boundaries, and logged robot trials:
// frame-wise graph agreement, boundary matching within a tolerance, success
// ratios, and combined 6-DoF placement error.
#pragma once

#include <vector>

#include <Eigen/Core>

#include "itsg/analysis_config.hpp"
#include "itsg/scenegraph.hpp"

namespace itsg {

/// One logged execution trial with everything the success and pose metrics
/// consume.
struct TrialRecord {
  long grasp_attempts = 0;
  long grasp_successes = 0;
  long place_attempts = 0;
  long place_successes = 0;
  struct PlacementError {
    Eigen::Vector3d p_est = Eigen::Vector3d::Zero();
    Eigen::Vector3d p_gt = Eigen::Vector3d::Zero();
    double theta_err = 0.0;  // rad
  };
  std::vector<PlacementError> placements;
  bool success = false;
  bool reused_policy = false;
};

/// Fraction of frames whose graphs match structurally within cfg.pos_tol.
/// Errors when the timelines have different frame counts.
double gra(const GraphTimeline& pred, const GraphTimeline& gt, const AnalysisConfig& cfg);

/// Fraction of reference boundaries with some predicted boundary within tol.
/// A predicted boundary may satisfy several reference boundaries; pass
/// one_to_one = true to consume each prediction at most once instead.
/// Errors on an empty reference list.
double tsa(const std::vector<double>& pred_b, const std::vector<double>& gt_b, double tol,
           bool one_to_one = false);

/// successes/attempts; errors when attempts is zero or counts are invalid.
double success_rate(long successes, long attempts);

struct PoseError6D {
  double pos = 0.0;       // m
  double ang = 0.0;       // rad
  double combined = 0.0;  // pos + lambda * ang
};

/// Euclidean position error plus lambda-weighted angular error.
PoseError6D pose_error_6d(const Eigen::Vector3d& p_est, const Eigen::Vector3d& p_gt,
                          double theta_err, double lambda = 1.0);

}  // namespace itsg
