/*
 * Copyright 2026 The meterkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "meterkit/edit_distance.hpp"
#include "meterkit/encoding.hpp"
#include "meterkit/error.hpp"
#include "meterkit/metrics.hpp"
#include "meterkit/random.hpp"
#include "meterkit/rnn/adam.hpp"
#include "meterkit/rnn/cells.hpp"
#include "meterkit/rnn/checkpoint.hpp"
#include "meterkit/rnn/gradcheck.hpp"
#include "meterkit/rnn/loss.hpp"
#include "meterkit/rnn/stack.hpp"
#include "meterkit/rnn/train.hpp"
#include "meterkit/scansion.hpp"
#include "meterkit/text_norm.hpp"
#include "meterkit/utf8.hpp"
