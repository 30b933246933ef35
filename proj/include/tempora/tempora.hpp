// Copyright 2026 The Tempora Authors.
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

#include "tempora/builder.hpp"
#include "tempora/centering.hpp"
#include "tempora/closeness_lexicon.hpp"
#include "tempora/conformance.hpp"
#include "tempora/constraint_engine.hpp"
#include "tempora/discourse_io.hpp"
#include "tempora/discourse_model.hpp"
#include "tempora/oracle.hpp"
#include "tempora/relation_lattice.hpp"
#include "tempora/render.hpp"
#include "tempora/resources.hpp"
