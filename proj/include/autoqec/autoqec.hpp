// Copyright 2026 The autoqec authors
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

#pragma once

#include "autoqec/code_search.hpp"
#include "autoqec/core.hpp"
#include "autoqec/correctable_basis.hpp"
#include "autoqec/diagnostics.hpp"
#include "autoqec/engine.hpp"
#include "autoqec/error_structure.hpp"
#include "autoqec/lindblad.hpp"
#include "autoqec/metrology.hpp"
#include "autoqec/noise.hpp"
#include "autoqec/qfi.hpp"
#include "autoqec/runner.hpp"
#include "autoqec/scenario.hpp"
#include "autoqec/simplex.hpp"
#include "autoqec/spectrum.hpp"
