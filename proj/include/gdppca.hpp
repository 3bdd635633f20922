// Copyright 2026 The gdppca Authors.
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
#ifndef GDPPCA_HPP_
#define GDPPCA_HPP_

// Umbrella header.

#include "gdppca/check_suite.hpp"
#include "gdppca/competitors.hpp"
#include "gdppca/data_io.hpp"
#include "gdppca/errors.hpp"
#include "gdppca/harness.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/mechanism.hpp"
#include "gdppca/rng.hpp"
#include "gdppca/samplers.hpp"
#include "gdppca/svg_plot.hpp"
#include "gdppca/theory.hpp"
#include "gdppca/transforms.hpp"

#endif  // GDPPCA_HPP_
