// Copyright 2026 The mrpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <vector>

#include "mrpc/format.hpp"
#include "mrpc/multi.hpp"
#include "mrpc/single.hpp"

namespace mrpc {

/// Which rectangle bound varies along a worst-case-regret curve.
enum class CurveAxis { u_min, v_min };

/// One sample of the two worst-case-regret curves. r_m <= r_s always.
struct CurvePoint {
    double x = 0.0;    // the varying bound
    double r_s = 0.0;  // single-project worst-case regret
    double r_m = 0.0;  // multiproject worst-case regret
};

/**
 * @brief Samples both worst-case-regret curves at n+1 uniform points of
 *        [0,1] along the chosen axis, the other bound held at `fixed`.
 */
inline std::vector<CurvePoint> wcr_curve(CurveAxis axis, double fixed, int n) {
    if (n < 2) throw std::invalid_argument("wcr_curve: n must be at least 2");
    std::vector<CurvePoint> points;
    points.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        const Params params = axis == CurveAxis::u_min ? Params{x, fixed}
                                                       : Params{fixed, x};
        params.ensure_valid();
        points.push_back({x, wcr_single(params), wcr_multi(params)});
    }
    return points;
}

/// CSV emission: header x,r_s,r_m, one row per point, 12 significant
/// digits, '.' decimal point, LF line endings. Byte-for-byte deterministic
/// for fixed inputs.
inline void write_curve_csv(std::ostream& os,
                            const std::vector<CurvePoint>& points) {
    os << "x,r_s,r_m\n";
    for (const CurvePoint& p : points)
        os << format_significant(p.x) << ',' << format_significant(p.r_s)
           << ',' << format_significant(p.r_m) << '\n';
}

}  // namespace mrpc
