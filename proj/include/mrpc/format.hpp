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

#include <charconv>
#include <string>
#include <system_error>

namespace mrpc {

/// Locale-independent decimal rendering with the given number of
/// significant digits (shortest general form, '.' decimal point).
inline std::string format_significant(double x, int digits = 12) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

/// The double nearest to x's `digits`-significant-digit decimal rendering.
/// Used so emitted JSON numbers carry no more precision than the reports
/// promise.
inline double round_significant(double x, int digits = 12) {
    const std::string s = format_significant(x, digits);
    double out = x;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

}  // namespace mrpc
