// Copyright 2026 The qaut Authors
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

#include "qaut/dsl/ast.hpp"        // IWYU pragma: export
#include "qaut/dsl/elaborate.hpp"  // IWYU pragma: export
#include "qaut/dsl/eval.hpp"       // IWYU pragma: export
#include "qaut/dsl/lexer.hpp"      // IWYU pragma: export
#include "qaut/dsl/parser.hpp"     // IWYU pragma: export
#include "qaut/dsl/serialize.hpp"  // IWYU pragma: export
#include "qaut/dsl/source.hpp"     // IWYU pragma: export
