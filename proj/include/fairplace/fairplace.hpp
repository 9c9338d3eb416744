// Copyright 2026 The Fairplace Authors
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

#include "fairplace/common.hpp"
#include "fairplace/metric.hpp"
#include "fairplace/instance.hpp"
#include "fairplace/generators.hpp"
#include "fairplace/objective.hpp"
#include "fairplace/lp.hpp"
#include "fairplace/relaxation.hpp"
#include "fairplace/rounding.hpp"
#include "fairplace/brute_force.hpp"
#include "fairplace/portfolio.hpp"
#include "fairplace/refine.hpp"
#include "fairplace/line_refine.hpp"
#include "fairplace/tree_refine.hpp"
#include "fairplace/pipelines.hpp"
#include "fairplace/hierarchy.hpp"
#include "fairplace/verify.hpp"
#include "fairplace/io.hpp"
