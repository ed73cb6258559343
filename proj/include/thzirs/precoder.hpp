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


#ifndef THZIRS_PRECODER_HPP
#define THZIRS_PRECODER_HPP

#include "core.hpp"
#include "grid_geom.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace thzirs
{
    enum class TdKind
    {
        ps_only,            // conventional hybrid structure, frequency-flat PSs only
        fully_connected_td, // each RF chain feeds k_td TDs, each TD feeds N / k_td PSs
        per_antenna_td,     // one TD in front of every PS
        sparse_subarray_td  // groups of K adjacent antennas share one TD
    };

    inline std::string to_string(TdKind k)
    {
        switch (k)
        {
        case TdKind::ps_only:
            return "ps-only";
        case TdKind::fully_connected_td:
            return "fully-connected-td";
        case TdKind::per_antenna_td:
            return "per-antenna-td";
        case TdKind::sparse_subarray_td:
            return "sparse-subarray-td";
        }
        return "unknown";
    }

    inline TdKind td_kind_from_string(const std::string &s)
    {
        for (TdKind k : {TdKind::ps_only, TdKind::fully_connected_td, TdKind::per_antenna_td, TdKind::sparse_subarray_td})
            if (to_string(k) == s)
                return k;
        throw invalid_parameter("Unknown structure '" + s + "'");
    }

    // Hardware description of a TD-based sparse RF chain structure.
    // Counts are per RF chain times n_rf; every RF chain reaches all N antennas through N PSs.
    class TdStructure
    {
    public:
        static TdStructure ps_only(std::size_t n_antennas, std::size_t n_rf = 1)
        {
            return {TdKind::ps_only, n_rf, n_antennas, 0};
        }
        static TdStructure per_antenna_td(std::size_t n_antennas, std::size_t n_rf = 1)
        {
            return {TdKind::per_antenna_td, n_rf, n_antennas, 1};
        }
        static TdStructure sparse_subarray_td(std::size_t n_antennas, std::size_t group_size, std::size_t n_rf = 1)
        {
            return {TdKind::sparse_subarray_td, n_rf, n_antennas, group_size};
        }
        static TdStructure fully_connected_td(std::size_t n_antennas, std::size_t td_per_rf, std::size_t n_rf = 1)
        {
            if (td_per_rf == 0 || n_antennas % td_per_rf != 0)
                throw invalid_parameter("TDs per RF chain must divide the antenna count");
            return {TdKind::fully_connected_td, n_rf, n_antennas, n_antennas / td_per_rf};
        }

        TdKind kind() const { return kind_; }
        std::size_t n_rf() const { return n_rf_; }
        std::size_t n_antennas() const { return n_antennas_; }

        // Antennas behind one TD (0 for PsOnly)
        std::size_t group_size() const { return group_size_; }
        std::size_t n_td_per_rf() const { return group_size_ == 0 ? 0 : n_antennas_ / group_size_; }
        std::size_t n_td() const { return n_rf_ * n_td_per_rf(); }
        std::size_t n_ps() const { return n_rf_ * n_antennas_; }
        bool has_td() const { return kind_ != TdKind::ps_only; }

        // Contiguous grouping: antenna n -> TD n / K
        std::vector<std::size_t> grouping() const
        {
            std::vector<std::size_t> g(n_antennas_, 0);
            if (group_size_ > 0)
                for (std::size_t n = 0; n < n_antennas_; ++n)
                    g[n] = n / group_size_;
            return g;
        }

    private:
        TdStructure(TdKind kind, std::size_t n_rf, std::size_t n_antennas, std::size_t group_size)
            : kind_(kind), n_rf_(n_rf), n_antennas_(n_antennas), group_size_(group_size)
        {
            if (n_rf == 0)
                throw invalid_parameter("At least one RF chain is required");
            if (n_antennas == 0)
                throw invalid_parameter("At least one antenna is required");
            if (kind != TdKind::ps_only && (group_size == 0 || n_antennas % group_size != 0))
                throw invalid_parameter("TD group size must divide the antenna count");
        }

        TdKind kind_;
        std::size_t n_rf_;
        std::size_t n_antennas_;
        std::size_t group_size_;
    };

    // Analog network of one RF chain: per-antenna PS phases, per-TD delays, antenna -> TD map
    class TdPrecoder
    {
    public:
        TdPrecoder(TdStructure structure, std::vector<double> ps_phases, std::vector<double> delays)
            : structure_(structure), ps_phases_(std::move(ps_phases)), delays_(std::move(delays)), grouping_(structure_.grouping())
        {
            if (ps_phases_.size() != structure_.n_antennas())
                throw invalid_parameter("PS phase count must equal the antenna count");
            if (delays_.size() != structure_.n_td_per_rf())
                throw invalid_parameter("Delay count must equal the TD count of one RF chain");
            for (double p : ps_phases_)
                if (!std::isfinite(p))
                    throw invalid_parameter("PS phases must be finite");
            for (double t : delays_)
                if (!(t >= 0.0) || !std::isfinite(t))
                    throw invalid_parameter("TD delays must be finite and non-negative");
        }

        const TdStructure &structure() const { return structure_; }
        const std::vector<double> &ps_phases() const { return ps_phases_; }
        const std::vector<double> &delays() const { return delays_; }
        const std::vector<std::size_t> &grouping() const { return grouping_; }

        // Delay seen by antenna n (0 without TDs)
        double delay_of(std::size_t n) const { return delays_.empty() ? 0.0 : delays_[grouping_[n]]; }

        // Same precoder with every delay shifted by dt (must stay non-negative)
        TdPrecoder with_delay_offset(double dt) const
        {
            std::vector<double> t = delays_;
            for (double &x : t)
                x += dt;
            return {structure_, ps_phases_, std::move(t)};
        }

    private:
        TdStructure structure_;
        std::vector<double> ps_phases_;
        std::vector<double> delays_;
        std::vector<std::size_t> grouping_;
    };

    // Frequency-flat PS phases pointing the f_c beam of an N-antenna ULA toward theta0:
    // phase_n = -2 pi f_c n d sin(theta0) / c, i.e. w = a(theta0, f_c) / sqrt(N)
    inline std::vector<double> ps_steering_phases(std::size_t n_antennas, double theta0, double fc_hz, double spacing_m)
    {
        std::vector<double> ph(n_antennas);
        const double k = two_pi * fc_hz * spacing_m * std::sin(theta0) / speed_of_light;
        for (std::size_t n = 0; n < n_antennas; ++n)
            ph[n] = -k * double(n);
        return ph;
    }

    inline TdPrecoder ps_only_precoder(std::size_t n_antennas, double theta0, double fc_hz, double spacing_m)
    {
        return {TdStructure::ps_only(n_antennas), ps_steering_phases(n_antennas, theta0, fc_hz, spacing_m), {}};
    }

    namespace detail
    {
        // Realizes a per-antenna true-time-delay profile [s]: each TD takes the profile value at
        // its first antenna (plus a common offset keeping all delays >= 0), and the PSs supply
        // the rest at f_c so that the f_c weights are exactly e^{-j 2 pi f_c profile_n}.
        inline TdPrecoder realize_delay_profile(const TdStructure &s, std::span<const double> profile, double fc_hz)
        {
            const std::size_t n_td = s.n_td_per_rf();
            const std::size_t k = s.group_size();
            std::vector<double> t(n_td);
            for (std::size_t p = 0; p < n_td; ++p)
                t[p] = profile[p * k];
            const double t_off = -*std::min_element(t.begin(), t.end());
            for (double &x : t)
                x += t_off;

            std::vector<double> ps(s.n_antennas());
            for (std::size_t n = 0; n < ps.size(); ++n)
                ps[n] = -two_pi * fc_hz * profile[n] + two_pi * fc_hz * t[n / k];
            return {s, std::move(ps), std::move(t)};
        }
    }

    // Beam convergence: TD p gets t_p = p K d sin(theta0) / c + t_off; PSs hold the f_c residual,
    // so every subcarrier's beam points at theta0 up to the intra-group split.
    inline TdPrecoder convergence_delays(const TdStructure &structure, double theta0, double fc_hz, double spacing_m)
    {
        if (!structure.has_td())
            throw unsupported_structure("Beam convergence needs a structure with TDs");
        std::vector<double> profile(structure.n_antennas());
        const double step = spacing_m * std::sin(theta0) / speed_of_light;
        for (std::size_t n = 0; n < profile.size(); ++n)
            profile[n] = double(n) * step;
        return detail::realize_delay_profile(structure, profile, fc_hz);
    }

    // Per-group steering directions for broadening: uniform partition of [theta_a, theta_b]
    inline std::vector<double> broadening_directions(std::size_t n_groups, double theta_a, double theta_b)
    {
        std::vector<double> th(n_groups);
        for (std::size_t p = 0; p < n_groups; ++p)
            th[p] = theta_a + (double(p) + 0.5) * (theta_b - theta_a) / double(n_groups);
        return th;
    }

    // Beam broadening: group p steers toward the centre of the p-th sub-sector. The aperture
    // delay profile is continuous, so the composite beam sweeps the sector without phase jumps
    // between groups. A zero-width sector reproduces convergence_delays.
    inline TdPrecoder broadening_delays(const TdStructure &structure, double theta_a, double theta_b, double fc_hz,
                                        double spacing_m)
    {
        if (structure.n_td_per_rf() < 2)
            throw unsupported_structure("Beam broadening needs at least two TDs per RF chain");
        if (theta_a > theta_b)
            throw invalid_parameter("Sector lower bound exceeds the upper bound");

        const std::size_t k = structure.group_size();
        const auto dirs = broadening_directions(structure.n_td_per_rf(), theta_a, theta_b);
        std::vector<double> profile(structure.n_antennas());
        double start = 0.0;
        for (std::size_t p = 0; p < dirs.size(); ++p)
        {
            const double step = spacing_m * std::sin(dirs[p]) / speed_of_light;
            for (std::size_t i = 0; i < k; ++i)
                profile[p * k + i] = start + double(i) * step;
            start += double(k) * step;
        }
        return detail::realize_delay_profile(structure, profile, fc_hz);
    }

    // w_n(f) = e^{j ps_n} e^{-j 2 pi f t_group(n)} / sqrt(N)
    inline std::vector<cplx> analog_weights_at(const TdPrecoder &precoder, double freq_hz)
    {
        const auto &ps = precoder.ps_phases();
        const double norm = 1.0 / std::sqrt(double(ps.size()));
        std::vector<cplx> w(ps.size());
        for (std::size_t n = 0; n < ps.size(); ++n)
            w[n] = norm * unit_phasor(ps[n] - two_pi * freq_hz * precoder.delay_of(n));
        return w;
    }

    // ----- Digital precoding ----------------------------------------------------------------------

    // Baseband precoders, one (n_rf x users) matrix per subcarrier; every column has unit power
    struct DigitalWeights
    {
        std::vector<Eigen::MatrixXcd> per_subcarrier;
    };

    // Zero-forcing over the effective (users x n_rf) channel of every subcarrier, columns
    // renormalized to unit power. For one user this is the matched (conjugate) weight.
    inline DigitalWeights digital_weights(const std::vector<Eigen::MatrixXcd> &effective)
    {
        DigitalWeights dw;
        dw.per_subcarrier.reserve(effective.size());
        for (const auto &h : effective)
        {
            if (h.rows() == 0 || h.cols() == 0)
                throw invalid_parameter("Effective channel must be non-empty");
            if (!h.allFinite())
                throw invalid_parameter("Effective channel must be finite");
            if (h.rows() > h.cols())
                throw singular_channel("More users than RF chains");

            const Eigen::MatrixXcd gram = h * h.adjoint();
            const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
            const auto &sv = svd.singularValues();
            if (!(sv(sv.size() - 1) > 1e-12 * std::max(sv(0), 1e-300)))
                throw singular_channel("Effective channel is rank deficient");

            Eigen::MatrixXcd w = h.adjoint() * gram.inverse();
            for (Eigen::Index c = 0; c < w.cols(); ++c)
                w.col(c).normalize();
            dw.per_subcarrier.push_back(std::move(w));
        }
        return dw;
    }

    // Single user, single RF chain: conj(g) / |g| per subcarrier
    inline std::vector<cplx> digital_weights(std::span<const cplx> effective_gains)
    {
        std::vector<cplx> w(effective_gains.size());
        for (std::size_t m = 0; m < w.size(); ++m)
        {
            const cplx g = effective_gains[m];
            if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
                throw invalid_parameter("Effective gains must be finite");
            if (!(std::abs(g) > 0.0))
                throw singular_channel("Effective gain is zero");
            w[m] = std::conj(g) / std::abs(g);
        }
        return w;
    }
}

#endif
