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


// Independent reference computations for the tests. Nothing here calls the library's
// steering, response or angle code; positions and phases are rebuilt from raw coordinates.

#ifndef THZIRS_TEST_ORACLES_HPP
#define THZIRS_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle
{
    using cplx = std::complex<double>;
    constexpr double c0 = 299792458.0;
    constexpr double pi = 3.14159265358979323846;

    struct P3
    {
        double x, y, z;
    };

    inline P3 sub(P3 a, P3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    inline P3 add(P3 a, P3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    inline P3 scale(double s, P3 a) { return {s * a.x, s * a.y, s * a.z}; }
    inline double dotp(P3 a, P3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    inline P3 unit(P3 a) { return scale(1.0 / std::sqrt(dotp(a, a)), a); }
    inline P3 crossp(P3 a, P3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }

    // Horizontal in-plane axis of an array facing `normal` (world up = +z)
    inline P3 horizontal_axis(P3 normal) { return unit(crossp({0, 0, 1}, normal)); }
    inline P3 vertical_axis(P3 normal) { return crossp(normal, horizontal_axis(normal)); }

    // |sum_n w_n e^{+j 2 pi f n d sin(theta) / c}|^2 / N for a ULA, summed term by term
    inline double ula_gain(const std::vector<cplx> &w, double d, double f, double theta)
    {
        cplx s = 0.0;
        for (std::size_t n = 0; n < w.size(); ++n)
            s += w[n] * std::polar(1.0, 2.0 * pi * f * double(n) * d * std::sin(theta) / c0);
        return std::norm(s) / double(w.size());
    }

    // Grid argmax of ula_gain over `grid`
    inline double ula_argmax(const std::vector<cplx> &w, double d, double f, const std::vector<double> &grid)
    {
        double best = -1.0, arg = 0.0;
        for (double th : grid)
        {
            const double g = ula_gain(w, d, f, th);
            if (g > best)
                best = g, arg = th;
        }
        return arg;
    }

    struct Panel
    {
        P3 center;
        P3 normal;
        std::size_t n_h, n_v;
        double spacing;
        std::vector<double> phases; // element index = iv * n_h + ih

        P3 element(std::size_t ih, std::size_t iv) const
        {
            const P3 h = horizontal_axis(normal), v = vertical_axis(normal);
            const double oh = (double(ih) - 0.5 * double(n_h - 1)) * spacing;
            const double ov = (double(iv) - 0.5 * double(n_v - 1)) * spacing;
            return add(center, add(scale(oh, h), scale(ov, v)));
        }
    };

    // Double sum over BS antennas and IRS elements of the plane-wave path phases of every
    // (antenna, element) pair, each stage referenced to its first element.
    inline cplx cascaded_gain(P3 bs, P3 bs_normal, const std::vector<cplx> &bs_w, double bs_spacing, P3 user,
                              const std::vector<Panel> &panels, double f)
    {
        const P3 bs_h = horizontal_axis(bs_normal);
        const double k = 2.0 * pi * f / c0;
        cplx total = 0.0;
        for (const auto &p : panels)
        {
            const P3 k_bs = unit(sub(p.center, bs));
            const P3 u_sum = add(unit(sub(bs, p.center)), unit(sub(user, p.center)));
            const P3 q0 = p.element(0, 0);
            for (std::size_t n = 0; n < bs_w.size(); ++n)
            {
                const P3 off_bs = scale(double(n) * bs_spacing, bs_h);
                for (std::size_t iv = 0; iv < p.n_v; ++iv)
                    for (std::size_t ih = 0; ih < p.n_h; ++ih)
                    {
                        const P3 off_irs = sub(p.element(ih, iv), q0);
                        const double phase = k * (dotp(off_bs, k_bs) + dotp(off_irs, u_sum)) + p.phases[iv * p.n_h + ih];
                        total += bs_w[n] * std::polar(1.0, phase);
                    }
            }
        }
        return total;
    }
}

#endif
