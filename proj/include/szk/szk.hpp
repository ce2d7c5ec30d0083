// Copyright 2026 The szk Authors
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

#include "szk/corpus.hpp"
#include "szk/description.hpp"
#include "szk/dsl.hpp"
#include "szk/error.hpp"
#include "szk/formula.hpp"
#include "szk/index_class.hpp"
#include "szk/json.hpp"
#include "szk/mult.hpp"
#include "szk/normalize.hpp"
#include "szk/oracle.hpp"
#include "szk/ppeval.hpp"
#include "szk/primes.hpp"
#include "szk/rank.hpp"
#include "szk/shatter.hpp"
