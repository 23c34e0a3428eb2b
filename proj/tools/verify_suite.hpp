// Copyright 2026 The heraldgen Authors
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

#include <string>
#include <vector>

namespace heraldgen {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    /// Criteria to run (1..9); empty means all.
    std::vector<int> only;
    int workers = 0;
    unsigned long long seed = 20240601;
};

/// Runs the end-to-end acceptance checks and returns one result per criterion.
std::vector<CriterionResult> run_verification(const VerifyOptions &options = {});

/// "PASS 1 name: detail (t s)".
std::string format_result(const CriterionResult &r);

}  // namespace heraldgen
