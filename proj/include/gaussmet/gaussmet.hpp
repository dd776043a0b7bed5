// Copyright 2026 The gaussmet Authors
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

#include "gaussmet/channels.hpp"
#include "gaussmet/coherence.hpp"
#include "gaussmet/csv.hpp"
#include "gaussmet/errors.hpp"
#include "gaussmet/fit.hpp"
#include "gaussmet/gaussian_state.hpp"
#include "gaussmet/metrology.hpp"
#include "gaussmet/sweep.hpp"
