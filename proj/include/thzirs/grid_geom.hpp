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


#ifndef THZIRS_GRID_GEOM_HPP
#define THZIRS_GRID_GEOM_HPP

#include "core.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace thzirs
{
    // ----- Frequency grid -------------------------------------------------------------------------

    // Endpoint-inclusive uniform OFDM grid: f_m = f_c - B/2 + m * B / (M - 1), m = 0 .. M-1
    // - A single subcarrier sits at f_c
    // - Throws invalid_parameter unless f_c > B/2 > 0 and M >= 1
    inline std::vector<double> subcarrier_frequencies(double center_hz, double bandwidth_hz, std::size_t count)
    {
        if (count == 0)
            throw invalid_parameter("Subcarrier count must be at least 1");
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw invalid_parameter("Bandwidth must be positive");
        if (!(center_hz > 0.5 * bandwidth_hz) || !std::isfinite(center_hz))
            throw invalid_parameter("Center frequency must exceed half the bandwidth");

        if (count == 1)
            return {center_hz};

        std::vector<double> f(count);
        const double step = bandwidth_hz / double(count - 1);
        double hi = center_hz + 0.5 * bandwidth_hz;
        while ((hi - center_hz) * 2.0 > bandwidth_hz) // keep max - min <= B despite rounding
            hi = std::nextafter(hi, 0.0);

        // Mirror the upper half: f_c <= f_hi <= 2 f_c makes 2 f_c - f_hi exact, so
        // f[m] + f[M-1-m] == 2*f_c holds bit-exactly
        for (std::size_t m = 0; m < count / 2; ++m)
        {
            const double f_hi = hi - double(m) * step;
            f[count - 1 - m] = f_hi;
            f[m] = 2.0 * center_hz - f_hi;
        }
        if (count % 2 == 1)
            f[count / 2] = center_hz;
        return f;
    }

    class FrequencyGrid
    {
    public:
        FrequencyGrid(double center_hz, double bandwidth_hz, std::size_t count)
            : center_hz_(center_hz), bandwidth_hz_(bandwidth_hz),
              freqs_(subcarrier_frequencies(center_hz, bandwidth_hz, count)) {}

        double center() const { return center_hz_; }
        double bandwidth() const { return bandwidth_hz_; }
        std::size_t size() const { return freqs_.size(); }
        double operator[](std::size_t m) const { return freqs_[m]; }
        const std::vector<double> &frequencies() const { return freqs_; }

        auto begin() const { return freqs_.begin(); }
        auto end() const { return freqs_.end(); }

    private:
        double center_hz_;
        double bandwidth_hz_;
        std::vector<double> freqs_;
    };

    inline double wavelength(double freq_hz) { return speed_of_light / freq_hz; }
    inline double half_wavelength(double freq_hz) { return 0.5 * speed_of_light / freq_hz; }

    // ----- Array geometry -------------------------------------------------------------------------

    enum class ArrayKind
    {
        ula,
        upa
    };

    // Uniform array in its local frame: x = horizontal axis, y = vertical axis, z = boresight.
    // Element 0 sits at the origin (phase reference). UPA elements are stored row by row,
    // element index = i_v * n_h + i_h.
    class ArrayGeometry
    {
    public:
        static ArrayGeometry ula(std::size_t n, double spacing_m) { return {ArrayKind::ula, n, 1, spacing_m}; }
        static ArrayGeometry upa(std::size_t n_h, std::size_t n_v, double spacing_m) { return {ArrayKind::upa, n_h, n_v, spacing_m}; }
        static ArrayGeometry single() { return {ArrayKind::ula, 1, 1, 1.0}; }

        ArrayKind kind() const { return kind_; }
        std::size_t n_horizontal() const { return n_h_; }
        std::size_t n_vertical() const { return n_v_; }
        std::size_t size() const { return n_h_ * n_v_; }
        double spacing() const { return spacing_; }

        Vec3 element_position(std::size_t index) const
        {
            const std::size_t ih = index % n_h_;
            const std::size_t iv = index / n_h_;
            return {double(ih) * spacing_, double(iv) * spacing_, 0.0};
        }

        std::vector<Vec3> element_positions() const
        {
            std::vector<Vec3> p(size());
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = element_position(i);
            return p;
        }

        // Largest distance between any two elements [m]
        double aperture() const
        {
            const double w = double(n_h_ - 1) * spacing_;
            const double h = double(n_v_ - 1) * spacing_;
            return std::sqrt(w * w + h * h);
        }

    private:
        ArrayGeometry(ArrayKind kind, std::size_t n_h, std::size_t n_v, double spacing)
            : kind_(kind), n_h_(n_h), n_v_(n_v), spacing_(spacing)
        {
            if (n_h == 0 || n_v == 0)
                throw invalid_parameter("Array must have at least one element");
            if (kind == ArrayKind::ula && n_v != 1)
                throw invalid_parameter("ULA has a single row");
            if (!(spacing > 0.0) || !std::isfinite(spacing))
                throw invalid_parameter("Element spacing must be positive");
        }

        ArrayKind kind_;
        std::size_t n_h_;
        std::size_t n_v_;
        double spacing_;
    };

    // ----- Angles and local frames ----------------------------------------------------------------

    // Direction relative to an array boresight, front half-space only
    struct LinkAngles
    {
        double azimuth = 0.0;   // [rad], positive toward the array's horizontal axis
        double elevation = 0.0; // [rad], positive toward the array's vertical axis

        LinkAngles() = default;
        LinkAngles(double az, double el) : azimuth(az), elevation(el)
        {
            if (!(std::abs(az) < 0.5 * pi) || !(std::abs(el) < 0.5 * pi))
                throw invalid_parameter("Link angles must lie in (-pi/2, pi/2)");
        }

        // Unit direction in the array's local frame (x horizontal, y vertical, z boresight)
        Vec3 local_direction() const
        {
            const double ce = std::cos(elevation);
            return {std::sin(azimuth) * ce, std::sin(elevation), std::cos(azimuth) * ce};
        }
    };

    // Orthonormal array frame. The horizontal axis is up x boresight, so with up = +z and
    // boresight = +x the horizontal axis is +y and the vertical axis is +z.
    struct ArrayFrame
    {
        Vec3 horizontal;
        Vec3 vertical;
        Vec3 boresight;

        static ArrayFrame from_boresight(const Vec3 &boresight, const Vec3 &up = {0.0, 0.0, 1.0})
        {
            if (std::abs(norm(boresight) - 1.0) > 1e-9)
                throw invalid_parameter("Boresight must be a unit vector");
            Vec3 h = cross(up, boresight);
            if (norm(h) < 1e-12) // boresight parallel to up
                h = cross(Vec3{1.0, 0.0, 0.0}, boresight);
            h = normalized(h);
            return {h, cross(boresight, h), boresight};
        }

        Vec3 to_world(const Vec3 &local) const { return local.x * horizontal + local.y * vertical + local.z * boresight; }
        Vec3 to_local(const Vec3 &world) const { return {dot(world, horizontal), dot(world, vertical), dot(world, boresight)}; }
    };

    // Azimuth/elevation of `to` as seen from an array at `from` facing `boresight`
    // - Throws degenerate_geometry for coincident points or targets behind the array
    inline LinkAngles link_angles(const Vec3 &from, const Vec3 &to, const Vec3 &boresight, const Vec3 &up = {0.0, 0.0, 1.0})
    {
        const Vec3 d = to - from;
        if (norm(d) < 1e-12)
            throw degenerate_geometry("Link endpoints coincide");
        const ArrayFrame frame = ArrayFrame::from_boresight(boresight, up);
        const Vec3 v = frame.to_local(normalized(d));
        if (!(v.z > 0.0))
            throw degenerate_geometry("Target lies outside the array's front half-space");
        const double el = std::asin(std::clamp(v.y, -1.0, 1.0));
        const double az = std::atan2(v.x, v.z);
        return {az, el};
    }

    // ----- Scene ----------------------------------------------------------------------------------

    // A transmitting or receiving array placed in the world
    struct Node
    {
        Vec3 position;
        Vec3 boresight{1.0, 0.0, 0.0};
        ArrayGeometry array = ArrayGeometry::single();

        ArrayFrame frame() const { return ArrayFrame::from_boresight(boresight); }
        LinkAngles angles_to(const Vec3 &target) const { return link_angles(position, target, boresight); }
        Vec3 element_world_position(std::size_t i) const { return position + frame().to_world(array.element_position(i)); }
    };

    struct Scene
    {
        Node bs;
        Node user;
    };

    inline constexpr double far_field_factor = 10.0;

    // Far-field guard: distance must exceed 10x the largest aperture involved
    inline bool far_field_ok(double distance_m, double largest_aperture_m)
    {
        return distance_m > far_field_factor * largest_aperture_m;
    }

    inline void require_far_field(const Vec3 &a, const Vec3 &b, double largest_aperture_m, const std::string &what)
    {
        const double dist = norm(b - a);
        if (!far_field_ok(dist, largest_aperture_m))
            throw degenerate_geometry("Far-field condition violated for " + what + ": distance " + std::to_string(dist) +
                                      " m <= 10 x aperture " + std::to_string(largest_aperture_m) + " m");
    }
}

#endif
