// Copyright 2026 The mrpc Authors
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

#include "mrpc/adversary.hpp"
#include "mrpc/core.hpp"
#include "mrpc/curves.hpp"
#include "mrpc/extensions.hpp"
#include "mrpc/format.hpp"
#include "mrpc/json_io.hpp"
#include "mrpc/lp.hpp"
#include "mrpc/mechanism.hpp"
#include "mrpc/multi.hpp"
#include "mrpc/random.hpp"
#include "mrpc/single.hpp"
#include "mrpc/verify.hpp"
