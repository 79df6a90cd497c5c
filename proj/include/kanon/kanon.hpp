//
// Copyright 2026 The kanon Authors
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
//

#pragma once

#include "kanon/error.hpp"
#include "kanon/exact.hpp"
#include "kanon/generate.hpp"
#include "kanon/graph.hpp"
#include "kanon/heuristics.hpp"
#include "kanon/io.hpp"
#include "kanon/min_cost_flow.hpp"
#include "kanon/oracle.hpp"
#include "kanon/reduction.hpp"
#include "kanon/table.hpp"
