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


#ifndef THZIRS_METRICS_HPP
#define THZIRS_METRICS_HPP

#include "cascade.hpp"
#include "core.hpp"
#include "precoder.hpp"
#include "wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace thzirs
{
    // |g(f_m)| / |g(f_c)| with the same weights provider and IRS phases in both
    template <WeightsAt F>
    double relative_subcarrier_gain(const CascadeModel &model, const F &weights_at, double fm_hz, double fc_hz)
    {
        const cplx ref = model.gain(weights_at(fc_hz), fc_hz);
        if (!(std::abs(ref) > 0.0))
            throw degenerate_configuration("Reference gain at the center frequency is zero");
        return std::abs(model.gain(weights_at(fm_hz), fm_hz)) / std::abs(ref);
    }

    // ----- Leakage --------------------------------------------------------------------------------

    struct AngularInterval
    {
        double lo = 0.0; // [rad]
        double hi = 0.0; // [rad]
    };

    // Azimuth extent of the IRS deployment seen from the BS (panel corners)
    inline AngularInterval deployment_aperture(const Node &bs, const IrsDeployment &irs)
    {
        AngularInterval iv{pi, -pi};
        for (const auto &p : irs.panels())
        {
            const double hw = 0.5 * p.width(), hh = 0.5 * p.height();
            for (double sx : {-1.0, 1.0})
                for (double sy : {-1.0, 1.0})
                {
                    const Vec3 corner = p.center() + p.frame().to_world({sx * hw, sy * hh, 0.0});
                    const double az = bs.angles_to(corner).azimuth;
                    iv.lo = std::min(iv.lo, az);
                    iv.hi = std::max(iv.hi, az);
                }
        }
        return iv;
    }

    namespace detail
    {
        // Trapezoid integral of the piecewise-linear interpolant of (x, y) over [a, b]
        inline double integrate_clipped(std::span<const double> x, std::span<const double> y, double a, double b)
        {
            double sum = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i)
            {
                const double x0 = x[i], x1 = x[i + 1];
                const double lo = std::max(a, x0), hi = std::min(b, x1);
                if (!(hi > lo))
                    continue;
                const double slope = (y[i + 1] - y[i]) / (x1 - x0);
                const double ylo = y[i] + slope * (lo - x0);
                const double yhi = y[i] + slope * (hi - x0);
                sum += 0.5 * (ylo + yhi) * (hi - lo);
            }
            return sum;
        }
    }

    // Fraction of pattern power outside the IRS angular aperture
    // - Zero-width aperture gives 1; an inverted (empty) interval is invalid
    inline double beam_leakage(const BeamPattern &pattern, AngularInterval aperture)
    {
        if (!(aperture.hi >= aperture.lo))
            throw invalid_parameter("IRS angular aperture is empty");
        if (pattern.angles.size() < 2)
            throw invalid_parameter("Beam pattern needs at least two grid angles");
        const double total = detail::integrate_clipped(pattern.angles, pattern.gains, pattern.angles.front(), pattern.angles.back());
        if (!(total > 0.0))
            throw degenerate_configuration("Beam pattern carries no power");
        const double inside = detail::integrate_clipped(pattern.angles, pattern.gains, aperture.lo, aperture.hi);
        return std::clamp(1.0 - inside / total, 0.0, 1.0);
    }

    // Fraction of elements lit below eps * (strongest element power)
    inline double reflecting_leakage(std::span<const double> element_powers, double eps = 0.01)
    {
        if (!(eps > 0.0))
            throw invalid_parameter("Reflecting-leakage threshold must be positive");
        if (element_powers.empty())
            return 0.0;
        const double peak = *std::max_element(element_powers.begin(), element_powers.end());
        const auto dark = std::count_if(element_powers.begin(), element_powers.end(), [&](double p) { return p < eps * peak; });
        return double(dark) / double(element_powers.size());
    }

    struct LeakageReport
    {
        std::vector<double> beam_leakage; // per subcarrier
        double reflecting_leakage = 0.0;
        double threshold = 0.01;
    };

    // ----- Power and rate -------------------------------------------------------------------------

    struct PowerModel
    {
        double rf_chain_mw = 250.0;
        double phase_shifter_mw = 30.0;
        double time_delayer_mw = 80.0;
    };

    // n_rf * P_RF + n_td * P_TD + n_ps * P_PS  [mW]
    inline double hardware_power(const TdStructure &s, const PowerModel &m = {})
    {
        if (m.rf_chain_mw < 0.0 || m.phase_shifter_mw < 0.0 || m.time_delayer_mw < 0.0)
            throw invalid_parameter("Power model entries must be non-negative");
        return double(s.n_rf()) * m.rf_chain_mw + double(s.n_td()) * m.time_delayer_mw + double(s.n_ps()) * m.phase_shifter_mw;
    }

    // (1/M) sum_m log2(1 + snr_m |g_m|^2)  [bit/s/Hz]
    inline double spectral_efficiency(std::span<const cplx> gains, std::span<const double> snr)
    {
        if (gains.size() != snr.size())
            throw invalid_parameter("Need one SNR value per subcarrier");
        if (gains.empty())
            return 0.0;
        double se = 0.0;
        for (std::size_t m = 0; m < gains.size(); ++m)
        {
            if (!(snr[m] >= 0.0))
                throw invalid_parameter("SNR must be non-negative");
            se += std::log2(1.0 + snr[m] * std::norm(gains[m]));
        }
        return se / double(gains.size());
    }
}

#endif
