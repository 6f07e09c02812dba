//
// Copyright 2026 The WPIR Lab Authors
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

#ifndef WPIR_WPIR_HPP_
#define WPIR_WPIR_HPP_

#include "wpir/bounds.hpp"
#include "wpir/core.hpp"
#include "wpir/csv.hpp"
#include "wpir/entropy.hpp"
#include "wpir/metrics.hpp"
#include "wpir/optimizer.hpp"
#include "wpir/protocol_sim.hpp"
#include "wpir/rng.hpp"
#include "wpir/scheme_a.hpp"
#include "wpir/scheme_b.hpp"
#include "wpir/sweep.hpp"
#include "wpir/verify.hpp"
#include "wpir/wire.hpp"
#include "wpir/wrappers.hpp"

#endif  // WPIR_WPIR_HPP_
