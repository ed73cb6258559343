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


#ifndef THZIRS_CASCADE_HPP
#define THZIRS_CASCADE_HPP

#include "core.hpp"
#include "grid_geom.hpp"
#include "irs.hpp"
#include "wavefield.hpp"

#include <concepts>
#include <span>
#include <vector>

namespace thzirs
{
    // Callable giving the BS analog weights at a frequency
    template <typename F>
    concept WeightsAt = std::invocable<const F &, double> &&
                        std::convertible_to<std::invoke_result_t<const F &, double>, std::vector<cplx>>;

    // Staged BS -> IRS -> user LoS model with unit path amplitudes.
    //   g(f) = sum_panels [a_bs(bs->panel)^H w(f)] * [sum_e conj(a_e(in)) conj(a_e(out)) e^{j theta_e}] * [a_ue(ue->panel)^H v]
    // Every stage is a far-field plane wave evaluated at f and referenced to the first element of
    // its array, so no common propagation delay enters the per-subcarrier gain.
    class CascadeModel
    {
    public:
        CascadeModel(Scene scene, IrsDeployment deployment, std::vector<cplx> user_combiner = {1.0})
            : scene_(std::move(scene)), irs_(std::move(deployment)), combiner_(std::move(user_combiner))
        {
            if (!irs_.configured())
                throw state_error("IRS phases must be configured before evaluating the cascaded channel");
            if (combiner_.size() != scene_.user.array.size())
                throw invalid_parameter("User combiner length must match the user array");

            for (const auto &p : irs_.panels())
            {
                const double ap_bs = std::max(scene_.bs.array.aperture(), p.geometry().aperture());
                const double ap_ue = std::max(scene_.user.array.aperture(), p.geometry().aperture());
                require_far_field(scene_.bs.position, p.center(), ap_bs, "BS -> IRS");
                require_far_field(p.center(), scene_.user.position, ap_ue, "IRS -> user");

                PanelLink link;
                link.bs_departure = scene_.bs.angles_to(p.center());
                link.user_arrival = scene_.user.angles_to(p.center());
                link.irs_sum_direction = p.angles_to(scene_.bs.position).local_direction() +
                                         p.angles_to(scene_.user.position).local_direction();
                links_.push_back(link);
            }
        }

        const Scene &scene() const { return scene_; }
        const IrsDeployment &deployment() const { return irs_; }

        // Reflection factor of one panel at f (unit-amplitude elements)
        cplx panel_reflection(std::size_t p, double freq_hz) const
        {
            const auto &panel = irs_.panels()[p];
            const auto &theta = panel.phases();
            const double k = two_pi * freq_hz / speed_of_light;
            cplx sum = 0.0;
            for (std::size_t e = 0; e < panel.size(); ++e)
                sum += unit_phasor(k * dot(panel.geometry().element_position(e), links_[p].irs_sum_direction) + theta[e]);
            return sum;
        }

        cplx gain(std::span<const cplx> bs_weights, double freq_hz) const
        {
            cplx g = 0.0;
            for (std::size_t p = 0; p < links_.size(); ++p)
            {
                const cplx tx = array_response(scene_.bs.array, bs_weights, links_[p].bs_departure, freq_hz);
                const cplx rx = array_response(scene_.user.array, combiner_, links_[p].user_arrival, freq_hz);
                g += tx * panel_reflection(p, freq_hz) * rx;
            }
            return g;
        }

        template <WeightsAt F>
        GainProfile profile(const F &weights_at, std::span<const double> freqs, double fc_hz) const
        {
            GainProfile gp;
            gp.frequencies.assign(freqs.begin(), freqs.end());
            gp.gains.reserve(freqs.size());
            for (double f : freqs)
            {
                const std::vector<cplx> w = weights_at(f);
                gp.gains.push_back(gain(w, f));
            }
            const std::vector<cplx> w_ref = weights_at(fc_hz);
            gp.reference = gain(w_ref, fc_hz);
            return gp;
        }

        // |a_bs(bs -> element)^H w|^2 for every IRS element, panel by panel
        std::vector<double> incident_element_powers(std::span<const cplx> bs_weights, double freq_hz) const
        {
            std::vector<double> pw;
            pw.reserve(irs_.total_elements());
            for (const auto &panel : irs_.panels())
                for (std::size_t e = 0; e < panel.size(); ++e)
                {
                    const LinkAngles a = scene_.bs.angles_to(panel.element_world_position(e));
                    pw.push_back(std::norm(array_response(scene_.bs.array, bs_weights, a, freq_hz)));
                }
            return pw;
        }

    private:
        struct PanelLink
        {
            LinkAngles bs_departure;
            LinkAngles user_arrival;
            Vec3 irs_sum_direction; // u_in + u_out in the panel frame
        };

        Scene scene_;
        IrsDeployment irs_;
        std::vector<cplx> combiner_;
        std::vector<PanelLink> links_;
    };

    inline cplx cascaded_gain(std::span<const cplx> bs_weights, const IrsDeployment &irs, const Scene &scene, double freq_hz)
    {
        return CascadeModel(scene, irs).gain(bs_weights, freq_hz);
    }
}

#endif
