// SPDX-License-Identifier: Apache-2.0
//
// emfbeam - exposure-aware downlink beamforming simulator
// Copyright (C) 2026 The emfbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <vector>

#include "emfbeam/scenario.hpp"

namespace emfbeam
{

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Sampled upper half of the limit circle together with the near-field row of
// every sample. Rows depend only on the array layout, so one grid serves every
// precoder and every random draw that shares that layout.
class CircleGrid
{
  public:
    CircleGrid(std::vector<Vec2> elements, double radius, int samples);

    double radius() const { return radius_; }
    int size() const { return static_cast<int>(angles_.size()); }
    int elements() const { return static_cast<int>(elements_.size()); }
    const std::vector<double> &angles() const { return angles_; }
    const RowMatrix &rows() const { return rows_; }
    const std::vector<Vec2> &element_positions() const { return elements_; }
    double step() const { return angles_.size() > 1 ? angles_[1] - angles_[0] : 0.0; }

    Vec2 point(double angle) const { return radius_ * direction_polar(angle); }

    // omega at every sample for precoder b and power chi.
    std::vector<double> powers(const CVector &b, double chi) const;

    // omega at an arbitrary angle (row evaluated on the fly).
    double power_at(double angle, const CVector &b, double chi) const;

  private:
    std::vector<Vec2> elements_;
    double radius_;
    std::vector<double> angles_;
    RowMatrix rows_;
};

// Square grid centred on the first BS element with cached near-field rows.
class AreaGrid
{
  public:
    AreaGrid(std::vector<Vec2> elements, double half_width, double step, double radius);

    int nx() const { return n_; }
    int ny() const { return n_; }
    double step() const { return step_; }
    double origin() const { return -half_width_; }
    double half_width() const { return half_width_; }
    double radius() const { return radius_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Vec2> &points() const { return points_; }

    // True for points on or beyond the limit circle (within 1e-9).
    const std::vector<bool> &outside() const { return outside_; }
    std::size_t outside_count() const { return outside_count_; }

    // Points that coincide with an array element report +inf; they always lie
    // inside the limit circle.
    std::vector<double> powers(const CVector &b, double chi) const;
    const std::vector<std::size_t> &singular_points() const { return singular_; }

  private:
    double half_width_;
    double step_;
    double radius_;
    int n_;
    std::vector<Vec2> points_;
    std::vector<bool> outside_;
    std::size_t outside_count_ = 0;
    std::vector<std::size_t> singular_;
    RowMatrix rows_;
};

} // namespace emfbeam
