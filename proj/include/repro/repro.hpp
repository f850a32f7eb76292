// Copyright 2026 The repro-bound Authors
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

// Umbrella header.

#include "repro/archive_io.hpp"
#include "repro/bounds.hpp"
#include "repro/config.hpp"
#include "repro/distance.hpp"
#include "repro/estimator.hpp"
#include "repro/noise_model.hpp"
#include "repro/normal_quantile.hpp"
#include "repro/philox.hpp"
#include "repro/report.hpp"
#include "repro/sampler.hpp"
#include "repro/tables.hpp"
