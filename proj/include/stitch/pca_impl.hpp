#pragma once

#include <Eigen/SVD>

#include "stitch/error.hpp"

namespace stitch {

template <typename Derived>
Eigen::MatrixXd pca_project(const Eigen::MatrixBase<Derived>& data, Eigen::Index k) {
  if (data.rows() < 2) throw InvalidArgument("pca: need at least two rows");
  if (data.cols() == 0) throw InvalidArgument("pca: matrix has no columns");
  if (k <= 0) throw InvalidArgument("pca: k must be positive");

  const Eigen::MatrixXd x = data.template cast<double>();
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  Eigen::MatrixXd axes = svd.matrixV();

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), k);
  const double cutoff = sigma.size() > 0 ? sigma(0) * 1e-10 : 0.0;
  for (Eigen::Index c = 0; c < std::min<Eigen::Index>(k, sigma.size()); ++c) {
    if (sigma(c) <= cutoff) break;
    Eigen::Index lead = 0;
    axes.col(c).cwiseAbs().maxCoeff(&lead);
    if (axes(lead, c) < 0) axes.col(c) = -axes.col(c);
    out.col(c) = centered * axes.col(c);
  }
  return out;
}

}  // namespace stitch
