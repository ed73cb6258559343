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

#ifndef THZIRS_CORE_HPP
#define THZIRS_CORE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thzirs
{
    using cplx = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0; // [m/s]
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    // e^{j*phase}
    inline cplx unit_phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

    // Wraps into [0, 2*pi)
    inline double wrap_phase(double phase)
    {
        double r = std::fmod(phase, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi)
            r = 0.0;
        return r;
    }

    // ----- Errors ---------------------------------------------------------------------------------

    struct invalid_parameter : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    struct degenerate_geometry : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Operation called on an object that is not configured yet (e.g. IRS phases unset)
    struct state_error : std::logic_error
    {
        using std::logic_error::logic_error;
    };

    struct unsupported_structure : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    struct singular_channel : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    struct degenerate_configuration : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    struct io_error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // ----- 3-D vectors ----------------------------------------------------------------------------

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr Vec3 &operator+=(const Vec3 &o)
        {
            x += o.x, y += o.y, z += o.z;
            return *this;
        }
        friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
        friend constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
        friend constexpr Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
        friend constexpr Vec3 operator*(const Vec3 &a, double s) { return s * a; }
        friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    inline constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

    inline constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }

    inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

    inline Vec3 normalized(const Vec3 &a)
    {
        const double n = norm(a);
        if (!(n > 0.0) || !std::isfinite(n))
            throw degenerate_geometry("Cannot normalize a zero-length vector");
        return (1.0 / n) * a;
    }
}

#endif
