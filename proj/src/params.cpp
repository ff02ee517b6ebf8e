// Copyright (c) 2026, The aapot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aapot/params.hpp"

#include <sstream>

#include "aapot/error.hpp"

namespace aapot {

void RunParams::validate() const {
    auto fail = [](const char* what, double v) {
        std::ostringstream msg;
        msg << what << " (got " << v << ")";
        throw ConfigError(msg.str());
    };
    if (!(h > 0.0) || !std::isfinite(h)) fail("h must be positive", h);
    if (!(D >= 1.0) || !std::isfinite(D)) fail("D must be >= 1", D);
    if (M < 1 || M > 3) fail("M must be 1, 2 or 3", M);
    if (!(r > 0.0) || !std::isfinite(r)) fail("r must be positive", r);
    if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) fail("lambda2 must be positive", lambda2);
    if (n != 2) fail("cubature assembly is planar; n must be 2", n);
}

}  // namespace aapot
