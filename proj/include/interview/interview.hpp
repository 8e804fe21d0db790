// Copyright 2026 The Interview Eval Authors.
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

#include "interview/config_file.hpp"
#include "interview/engine.hpp"
#include "interview/error.hpp"
#include "interview/harness.hpp"
#include "interview/metrics.hpp"
#include "interview/panel.hpp"
#include "interview/participants.hpp"
#include "interview/question.hpp"
#include "interview/question_pool.hpp"
#include "interview/random.hpp"
#include "interview/rational.hpp"
#include "interview/report.hpp"
#include "interview/transcript.hpp"
#include "interview/transcript_io.hpp"
