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


// Prints where a 64-antenna beam steered to 45 deg points at the band edges and centre,
// with phase shifters only and with 16 time delayers.

#include "thzirs/thzirs.hpp"

#include <cstdio>

int main()
{
    using namespace thzirs;

    const double fc = 200e9, d = half_wavelength(fc), theta0 = deg_to_rad(45.0);
    const FrequencyGrid grid(fc, 20e9, 64);
    const ArrayGeometry ula = ArrayGeometry::ula(64, d);
    const auto angles = uniform_angle_grid(10000);

    const TdPrecoder ps = ps_only_precoder(64, theta0, fc, d);
    const TdPrecoder td = convergence_delays(TdStructure::sparse_subarray_td(64, 4), theta0, fc, d);

    std::printf("%10s %14s %14s %12s %12s\n", "freq_GHz", "peak_ps_deg", "peak_td_deg", "gain_ps", "gain_td");
    for (std::size_t m : {std::size_t(0), std::size_t(31), std::size_t(63)})
    {
        const auto bp_ps = beam_pattern(analog_weights_at(ps, grid[m]), ula, grid[m], angles);
        const auto bp_td = beam_pattern(analog_weights_at(td, grid[m]), ula, grid[m], angles);
        const double g_ps = beam_pattern(analog_weights_at(ps, grid[m]), ula, grid[m], std::vector<double>{theta0}).gains[0];
        const double g_td = beam_pattern(analog_weights_at(td, grid[m]), ula, grid[m], std::vector<double>{theta0}).gains[0];
        std::printf("%10.3f %14.4f %14.4f %12.4f %12.4f\n", grid[m] * 1e-9, rad_to_deg(bp_ps.peak_angle()),
                    rad_to_deg(bp_td.peak_angle()), g_ps, g_td);
    }
    return 0;
}
