// Copyright 2026 The catsampler authors
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

#include "catsampler/amplitudes.hpp"
#include "catsampler/cat_states.hpp"
#include "catsampler/digest.hpp"
#include "catsampler/errors.hpp"
#include "catsampler/experiments.hpp"
#include "catsampler/io.hpp"
#include "catsampler/parallel.hpp"
#include "catsampler/permanent.hpp"
#include "catsampler/propagation.hpp"
#include "catsampler/rng.hpp"
#include "catsampler/sampler.hpp"
#include "catsampler/unitary.hpp"
#include "catsampler/version.hpp"
