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

#include "emfbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "emfbeam/channel.hpp"

namespace emfbeam
{

namespace
{

std::vector<double> row_powers(const RowMatrix &rows, const CVector &b, double chi)
{
    if (rows.cols() != b.size())
        throw std::invalid_argument("probe grid: precoder length does not match the array");
    const CVector field = rows * b;
    std::vector<double> out(static_cast<std::size_t>(field.size()));
    for (Eigen::Index i = 0; i < field.size(); ++i)
        out[static_cast<std::size_t>(i)] = std::norm(field[i]) * chi;
    return out;
}

} // namespace

CircleGrid::CircleGrid(std::vector<Vec2> elements, double radius, int samples)
    : elements_(std::move(elements)), radius_(radius)
{
    if (samples < 2)
        throw std::invalid_argument("CircleGrid: need at least two samples");
    if (!(radius > 0.0))
        throw std::invalid_argument("CircleGrid: radius must be > 0");

    angles_.resize(static_cast<std::size_t>(samples));
    const double step = pi / static_cast<double>(samples - 1);
    for (int i = 0; i < samples; ++i)
        angles_[i] = step * i;
    angles_.back() = pi;

    rows_.resize(samples, static_cast<Eigen::Index>(elements_.size()));
    for (int i = 0; i < samples; ++i)
        near_field_row(elements_, point(angles_[i]), rows_.row(i).data());
}

std::vector<double> CircleGrid::powers(const CVector &b, double chi) const
{
    return row_powers(rows_, b, chi);
}

double CircleGrid::power_at(double angle, const CVector &b, double chi) const
{
    const ChannelRow row = near_field_channel(elements_, point(angle));
    return std::norm((row.values.transpose() * b)(0)) * chi;
}

AreaGrid::AreaGrid(std::vector<Vec2> elements, double half_width, double step, double radius)
    : half_width_(half_width), step_(step), radius_(radius)
{
    if (!(step > 0.0) || !(half_width > 0.0))
        throw std::invalid_argument("AreaGrid: step and half width must be > 0");

    n_ = static_cast<int>(std::floor(2.0 * half_width / step + 1e-9)) + 1;
    points_.reserve(static_cast<std::size_t>(n_) * n_);
    outside_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int iy = 0; iy < n_; ++iy)
        for (int ix = 0; ix < n_; ++ix)
        {
            const Vec2 q{-half_width + step * ix, -half_width + step * iy};
            points_.push_back(q);
            const bool out = norm(q) >= radius - 1e-9;
            outside_.push_back(out);
            outside_count_ += out ? 1 : 0;
        }

    rows_.setZero(static_cast<Eigen::Index>(points_.size()), static_cast<Eigen::Index>(elements.size()));
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        const bool hit = std::any_of(elements.begin(), elements.end(),
                                     [&](Vec2 e) { return norm(points_[i] - e) < 1e-9; });
        if (hit)
            singular_.push_back(i);
        else
            near_field_row(elements, points_[i], rows_.row(static_cast<Eigen::Index>(i)).data());
    }
}

std::vector<double> AreaGrid::powers(const CVector &b, double chi) const
{
    auto out = row_powers(rows_, b, chi);
    for (std::size_t i : singular_)
        out[i] = std::numeric_limits<double>::infinity();
    return out;
}

} // namespace emfbeam
