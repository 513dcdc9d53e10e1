// Copyright 2026 The qemsof Authors.
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

#ifndef QEMSOF_QEMSOF_HPP_
#define QEMSOF_QEMSOF_HPP_

#include "qemsof/bounds.hpp"
#include "qemsof/channel.hpp"
#include "qemsof/coded.hpp"
#include "qemsof/pauli.hpp"
#include "qemsof/ptm.hpp"
#include "qemsof/qem.hpp"
#include "qemsof/random.hpp"
#include "qemsof/simulator.hpp"
#include "qemsof/twirl.hpp"
#include "qemsof/types.hpp"
#include "qemsof/version.hpp"

#endif  // QEMSOF_QEMSOF_HPP_
