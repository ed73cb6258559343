// SPDX-License-Identifier: Apache-2.0
//
// thzirs: wideband THz intelligent-reflecting-surface link simulator
// Copyright (C) 2026 The thzirs Authors
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


#ifndef THZIRS_WAVEFIELD_HPP
#define THZIRS_WAVEFIELD_HPP

#include "core.hpp"
#include "grid_geom.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace thzirs
{
    // Phase convention used everywhere: a propagation delay tau contributes e^{-j 2 pi f tau}.
    // The steering vector of an array toward direction u holds e^{-j 2 pi f (p . u) / c} for an
    // element at local position p; element 0 is the phase reference.
    struct SteeringVector
    {
        std::vector<cplx> entries;
        double frequency = 0.0;
        LinkAngles angles;

        std::size_t size() const { return entries.size(); }
        const cplx &operator[](std::size_t i) const { return entries[i]; }
    };

    inline SteeringVector steering_vector(const ArrayGeometry &geometry, const LinkAngles &angles, double freq_hz)
    {
        const Vec3 u = angles.local_direction();
        const double k = two_pi * freq_hz / speed_of_light;
        SteeringVector sv{std::vector<cplx>(geometry.size()), freq_hz, angles};
        for (std::size_t i = 0; i < geometry.size(); ++i)
            sv.entries[i] = unit_phasor(-k * dot(geometry.element_position(i), u));
        return sv;
    }

    // Far-field array response a(u, f)^H w toward a local unit direction u.
    // Uses a per-row phasor recurrence; accurate to ~1e-14 for the array sizes used here.
    inline cplx array_response(const ArrayGeometry &geometry, std::span<const cplx> weights, const Vec3 &u_local, double freq_hz)
    {
        if (weights.size() != geometry.size())
            throw invalid_parameter("Weight count does not match the number of array elements");
        const double k = two_pi * freq_hz / speed_of_light * geometry.spacing();
        const cplx step_h = unit_phasor(k * u_local.x);
        const cplx step_v = unit_phasor(k * u_local.y);
        const std::size_t n_h = geometry.n_horizontal();

        cplx sum = 0.0, row_phase = 1.0;
        for (std::size_t iv = 0; iv < geometry.n_vertical(); ++iv)
        {
            cplx ph = row_phase, row_sum = 0.0;
            const cplx *w = weights.data() + iv * n_h;
            for (std::size_t ih = 0; ih < n_h; ++ih)
            {
                row_sum += ph * w[ih];
                ph *= step_h;
            }
            sum += row_sum;
            row_phase *= step_v;
        }
        return sum;
    }

    inline cplx array_response(const ArrayGeometry &geometry, std::span<const cplx> weights, const LinkAngles &angles, double freq_hz)
    {
        return array_response(geometry, weights, angles.local_direction(), freq_hz);
    }

    // ----- Beam patterns --------------------------------------------------------------------------

    // `points` cell-centred azimuths covering the open interval (lo, hi)
    inline std::vector<double> uniform_angle_grid(std::size_t points, double lo_rad = -0.5 * pi, double hi_rad = 0.5 * pi)
    {
        if (points == 0)
            throw invalid_parameter("Angle grid must contain at least one point");
        if (!(hi_rad > lo_rad))
            throw invalid_parameter("Angle grid upper bound must exceed the lower bound");
        std::vector<double> g(points);
        const double step = (hi_rad - lo_rad) / double(points);
        for (std::size_t i = 0; i < points; ++i)
            g[i] = lo_rad + (double(i) + 0.5) * step;
        return g;
    }

    struct BeamPattern
    {
        std::vector<double> angles; // azimuth [rad], elevation 0
        std::vector<double> gains;  // |a^H w|^2 / N
        double frequency = 0.0;

        std::size_t argmax() const
        {
            return std::size_t(std::distance(gains.begin(), std::max_element(gains.begin(), gains.end())));
        }
        double peak_angle() const { return angles[argmax()]; }
        double peak_gain() const { return gains[argmax()]; }
    };

    // Azimuth cut of the array pattern, normalized so that a unit-power matched weight vector
    // gives exactly 1 at its steering angle.
    inline BeamPattern beam_pattern(std::span<const cplx> weights, const ArrayGeometry &geometry, double freq_hz,
                                    std::span<const double> angle_grid)
    {
        if (weights.size() != geometry.size())
            throw invalid_parameter("Weight count does not match the number of array elements");
        if (angle_grid.empty())
            throw invalid_parameter("Angle grid is empty");

        BeamPattern bp{{angle_grid.begin(), angle_grid.end()}, std::vector<double>(angle_grid.size()), freq_hz};
        const double inv_n = 1.0 / double(geometry.size());
        for (std::size_t i = 0; i < angle_grid.size(); ++i)
        {
            const Vec3 u{std::sin(angle_grid[i]), 0.0, std::cos(angle_grid[i])};
            bp.gains[i] = std::norm(array_response(geometry, weights, u, freq_hz)) * inv_n;
        }
        return bp;
    }

    // ----- Per-subcarrier gains -------------------------------------------------------------------

    struct GainProfile
    {
        std::vector<double> frequencies;
        std::vector<cplx> gains;
        cplx reference = 0.0; // gain evaluated at f = f_c

        // |g_m| / |g(f_c)|
        double relative(std::size_t m) const
        {
            if (!(std::abs(reference) > 0.0))
                throw degenerate_configuration("Reference gain at the center frequency is zero");
            return std::abs(gains.at(m)) / std::abs(reference);
        }

        std::vector<double> relative_all() const
        {
            std::vector<double> r(gains.size());
            for (std::size_t m = 0; m < r.size(); ++m)
                r[m] = relative(m);
            return r;
        }
    };
}

#endif
