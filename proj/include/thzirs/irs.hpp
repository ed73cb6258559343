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


#ifndef THZIRS_IRS_HPP
#define THZIRS_IRS_HPP

#include "core.hpp"
#include "grid_geom.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thzirs
{
    // Rectangular IRS panel. Elements are laid out as a UPA in the panel frame (horizontal axis
    // = up x normal); element 0 is the lower-left corner and the phase reference.
    class IrsPanel
    {
    public:
        IrsPanel(std::size_t n_h, std::size_t n_v, double spacing_m, Vec3 center, Vec3 normal = {1.0, 0.0, 0.0})
            : geometry_(ArrayGeometry::upa(n_h, n_v, spacing_m)), center_(center), normal_(normal),
              frame_(ArrayFrame::from_boresight(normal)) {}

        const ArrayGeometry &geometry() const { return geometry_; }
        std::size_t n_horizontal() const { return geometry_.n_horizontal(); }
        std::size_t n_vertical() const { return geometry_.n_vertical(); }
        std::size_t size() const { return geometry_.size(); }
        double spacing() const { return geometry_.spacing(); }
        const Vec3 &center() const { return center_; }
        const Vec3 &normal() const { return normal_; }
        const ArrayFrame &frame() const { return frame_; }

        double width() const { return double(n_horizontal()) * spacing(); }
        double height() const { return double(n_vertical()) * spacing(); }

        // World position of element 0
        Vec3 origin() const
        {
            const double hx = 0.5 * double(n_horizontal() - 1) * spacing();
            const double hy = 0.5 * double(n_vertical() - 1) * spacing();
            return center_ - frame_.to_world({hx, hy, 0.0});
        }

        Vec3 element_world_position(std::size_t i) const { return origin() + frame_.to_world(geometry_.element_position(i)); }

        LinkAngles angles_to(const Vec3 &target) const { return link_angles(center_, target, normal_); }

        bool configured() const { return phases_.has_value(); }

        const std::vector<double> &phases() const
        {
            if (!phases_)
                throw state_error("IRS panel phases are not configured");
            return *phases_;
        }

        // Phases are wrapped into [0, 2 pi)
        void set_phases(std::vector<double> phases)
        {
            if (phases.size() != size())
                throw invalid_parameter("Phase count must equal the panel element count");
            for (double &p : phases)
            {
                if (!std::isfinite(p))
                    throw invalid_parameter("IRS phases must be finite");
                p = wrap_phase(p);
            }
            phases_ = std::move(phases);
        }

    private:
        ArrayGeometry geometry_;
        Vec3 center_;
        Vec3 normal_;
        ArrayFrame frame_;
        std::optional<std::vector<double>> phases_;
    };

    class IrsDeployment
    {
    public:
        IrsDeployment(int scheme_id, std::vector<IrsPanel> panels) : scheme_id_(scheme_id), panels_(std::move(panels))
        {
            if (panels_.empty())
                throw invalid_parameter("Deployment needs at least one panel");
            check_non_overlapping();
        }

        int scheme_id() const { return scheme_id_; }
        const std::vector<IrsPanel> &panels() const { return panels_; }
        std::vector<IrsPanel> &panels() { return panels_; }
        std::size_t panel_count() const { return panels_.size(); }

        std::size_t total_elements() const
        {
            std::size_t n = 0;
            for (const auto &p : panels_)
                n += p.size();
            return n;
        }

        bool configured() const
        {
            for (const auto &p : panels_)
                if (!p.configured())
                    return false;
            return true;
        }

        // Largest single-panel aperture [m]
        double largest_aperture() const
        {
            double a = 0.0;
            for (const auto &p : panels_)
                a = std::max(a, p.geometry().aperture());
            return a;
        }

    private:
        // Coplanar, parallel panels must not share area
        void check_non_overlapping() const
        {
            for (std::size_t i = 0; i < panels_.size(); ++i)
                for (std::size_t j = i + 1; j < panels_.size(); ++j)
                {
                    const auto &a = panels_[i], &b = panels_[j];
                    if (norm(a.normal() - b.normal()) > 1e-9)
                        continue;
                    const Vec3 d = a.frame().to_local(b.center() - a.center());
                    if (std::abs(d.z) > 1e-9)
                        continue;
                    const double gap_h = std::abs(d.x) - 0.5 * (a.width() + b.width());
                    const double gap_v = std::abs(d.y) - 0.5 * (a.height() + b.height());
                    if (gap_h < -1e-12 && gap_v < -1e-12)
                        throw invalid_parameter("IRS panels " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
                }
        }

        int scheme_id_;
        std::vector<IrsPanel> panels_;
    };

    // Panel layout of the four deployment schemes for a base_n x base_n element budget:
    //   1: one base_n x base_n panel
    //   2: four (base_n/4 wide) x (base_n tall) rectangular panels
    //   3: four (base_n/2) x (base_n/2) square panels
    //   4: sixteen (base_n/4) x (base_n/4) square panels
    struct SchemeLayout
    {
        std::size_t panels;
        std::size_t n_h;
        std::size_t n_v;
    };

    inline SchemeLayout scheme_layout(int scheme_id, std::size_t base_n = 16)
    {
        if (base_n == 0 || base_n % 4 != 0)
            throw invalid_parameter("Base grid size must be a positive multiple of 4");
        switch (scheme_id)
        {
        case 1:
            return {1, base_n, base_n};
        case 2:
            return {4, base_n / 4, base_n};
        case 3:
            return {4, base_n / 2, base_n / 2};
        case 4:
            return {16, base_n / 4, base_n / 4};
        default:
            throw invalid_parameter("Unknown IRS deployment scheme " + std::to_string(scheme_id));
        }
    }

    struct DeploymentSite
    {
        Vec3 center{0.0, 0.0, 0.0};  // position of the scheme-1 panel; distributed layouts are symmetric about it
        Vec3 normal{1.0, 0.0, 0.0};  // wall normal
        double element_spacing = 0.0; // [m]
        double panel_gap = 0.02;      // edge-to-edge gap between adjacent panels along the wall [m]
    };

    // Builds the panels of a scheme; distributed panels are spaced equally along the wall's
    // horizontal axis. Phases are left unconfigured.
    inline IrsDeployment deployment_scheme(int scheme_id, const DeploymentSite &site, std::size_t base_n = 16)
    {
        const SchemeLayout lay = scheme_layout(scheme_id, base_n);
        if (!(site.panel_gap >= 0.0))
            throw invalid_parameter("Panel spacing must be non-negative");
        const ArrayFrame frame = ArrayFrame::from_boresight(site.normal);
        const double width = double(lay.n_h) * site.element_spacing;
        const double pitch = width + site.panel_gap;

        std::vector<IrsPanel> panels;
        panels.reserve(lay.panels);
        for (std::size_t i = 0; i < lay.panels; ++i)
        {
            const double offset = (double(i) - 0.5 * double(lay.panels - 1)) * pitch;
            panels.emplace_back(lay.n_h, lay.n_v, site.element_spacing, site.center + offset * frame.horizontal, site.normal);
        }
        return {scheme_id, std::move(panels)};
    }

    // Coherent in -> out phase profile of one panel at f_c (wrapped to [0, 2 pi)).
    // Element e re-radiates conj(a_e(in)) conj(a_e(out)) e^{j theta_e}; the profile cancels that
    // propagation phase at f_c.
    inline std::vector<double> coherent_phases(const IrsPanel &panel, const LinkAngles &in, const LinkAngles &out, double fc_hz)
    {
        const Vec3 u = in.local_direction() + out.local_direction();
        const double k = two_pi * fc_hz / speed_of_light;
        std::vector<double> ph(panel.size());
        for (std::size_t e = 0; e < ph.size(); ++e)
            ph[e] = wrap_phase(-k * dot(panel.geometry().element_position(e), u));
        return ph;
    }

    // Per-panel phase configuration; phases stay fixed across subcarriers afterwards
    inline IrsDeployment configure_phases(IrsDeployment deployment, std::span<const LinkAngles> in_angles,
                                          std::span<const LinkAngles> out_angles, double fc_hz)
    {
        auto &panels = deployment.panels();
        if (in_angles.size() != panels.size() || out_angles.size() != panels.size())
            throw invalid_parameter("Need one incident and one departure direction per panel");
        for (std::size_t p = 0; p < panels.size(); ++p)
            panels[p].set_phases(coherent_phases(panels[p], in_angles[p], out_angles[p], fc_hz));
        return deployment;
    }

    // Each panel steers from `source` toward `target` using the angles seen from the panel centre
    inline IrsDeployment configure_phases(IrsDeployment deployment, const Vec3 &source, const Vec3 &target, double fc_hz)
    {
        std::vector<LinkAngles> in, out;
        for (const auto &p : deployment.panels())
        {
            in.push_back(p.angles_to(source));
            out.push_back(p.angles_to(target));
        }
        return configure_phases(std::move(deployment), in, out, fc_hz);
    }

    // Nearest of 2^bits uniform levels {2 pi k / 2^bits} on the circle; ties go to the lower level
    inline double quantize_phase(double phase, unsigned bits)
    {
        if (bits == 0)
            throw invalid_parameter("Phase quantization needs at least one bit");
        const std::size_t levels = std::size_t(1) << bits;
        const double step = two_pi / double(levels);
        const double x = wrap_phase(phase) / step;
        const std::size_t k = std::size_t(std::ceil(x - 0.5)) % levels;
        return double(k) * step;
    }

    inline IrsDeployment quantize_phases(IrsDeployment deployment, unsigned bits)
    {
        if (bits == 0)
            throw invalid_parameter("Phase quantization needs at least one bit");
        for (auto &panel : deployment.panels())
        {
            std::vector<double> q = panel.phases();
            for (double &p : q)
                p = quantize_phase(p, bits);
            panel.set_phases(std::move(q));
        }
        return deployment;
    }
}

#endif
