// Copyright 2026 The pathforge Authors
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

#ifndef PATHFORGE_PATHFORGE_HPP_
#define PATHFORGE_PATHFORGE_HPP_

#include "pathforge/accounting.hpp"
#include "pathforge/analytics.hpp"
#include "pathforge/commands.hpp"
#include "pathforge/dataset_io.hpp"
#include "pathforge/errors.hpp"
#include "pathforge/lp.hpp"
#include "pathforge/lp_build.hpp"
#include "pathforge/manifest.hpp"
#include "pathforge/model.hpp"
#include "pathforge/mps.hpp"
#include "pathforge/pathway.hpp"
#include "pathforge/result_io.hpp"
#include "pathforge/simplex.hpp"
#include "pathforge/timeagg.hpp"
#include "pathforge/validate.hpp"

#endif  // PATHFORGE_PATHFORGE_HPP_
