// SPDX-License-Identifier: Apache-2.0
//
// cvrp-toolkit: constrained-view radiated power metrics for antenna patterns
// Copyright (C) 2026 The cvrp-toolkit authors
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

#ifndef CVRP_CLI_HPP
#define CVRP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cvrp/diagnostics.hpp"

namespace cvrp
{
    /*!MD
    # cvrp command line
    ```
    cvrp synth    -o out.csv [--element cosine|huygens] [--scan deg | --beam k] [--fe 14,7]
                  [--rows 2] [--cols 8] [--spacing 0.5] [--freq 28e9] [--trp-dbm 0]
                  [--numbering row|column] [--dtheta 1.5] [--dphi 1.5] [--label text]
    cvrp remap    in.csv -o out.csv [--to standard|distributed]
    cvrp fill     in.csv -o out.csv [--fill-mw 0]
    cvrp rotate   in.csv -o out.csv --about-y deg
    cvrp trp      in.csv
    cvrp prp      in.csv (--theta1 a --theta2 b | --preset uhrp|n75prp|nhprp) [--node-center]
    cvrp cvrp     in.csv (--cap deg [--center t,p] | --window t1,t2,p1,p2 | --point t,p) [--node-center]
    cvrp sweep    in.csv [--center t,p] [--fovs 180,90,...] [--node-center] [-o sweep.csv]
    cvrp diagnose --ref a.csv --test b.csv [--threshold-db 0.5] [-o compare.csv]
    cvrp repro-fig5 --out-dir dir [--element cosine|huygens|both] [--trp-dbm 0]
    cvrp repro-fig6 --out-dir dir [--scan 0] [--fe 14,7] [--element cosine|huygens] [--threshold-db 0.5]
    ```
    Scalar results print as `X.XXXX dBm (Y.YYYY mW)`. Exit codes: 0 success, 1 domain or I/O error,
    2 usage error (unknown flag, malformed value, missing or conflicting options).
    MD!*/
    int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    // "X.XXXX dBm (Y.YYYY mW)"; small powers switch the mW part to scientific notation.
    std::string format_power(double mw);

    // Text summary printed by `diagnose` and `repro-fig6`.
    std::string format_comparison_summary(const SweepComparison &c);
}

#endif
