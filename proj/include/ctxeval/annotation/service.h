// Copyright 2026 The ctxeval Authors.
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

#ifndef CTXEVAL_ANNOTATION_SERVICE_H_
#define CTXEVAL_ANNOTATION_SERVICE_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxeval/core/clock.h"
#include "ctxeval/core/json.h"
#include "ctxeval/core/types.h"
#include "ctxeval/generation/generation.h"
#include "ctxeval/store/store.h"

namespace ctxeval {

// A pairwise comparison offered to human annotators.
struct AnnotationTaskSpec {
  std::string task_id;
  Query query;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  std::string candidate_a;
  std::string candidate_b;
  std::string response_a;
  std::string response_b;
  std::optional<SampledContext> context;
};

// One task per (pair, setting, query) that has both generations and, for
// context-aware settings, a sampled context. Task ids match the autorater
// stage's.
std::vector<AnnotationTaskSpec> BuildAnnotationTasks(
    const std::vector<Query>& queries, const std::vector<ModelPair>& pairs,
    const std::vector<EvaluationSetting>& settings,
    const std::vector<GenerationRecord>& generations,
    const std::map<std::string, SampledContext>& contexts);

struct AnnotationOptions {
  int judgments_per_task = 3;
  int quota = 3;
  std::chrono::seconds lease{30 * 60};
  // A task skipped this many times leaves the pool as starved.
  int starve_after_skips = 10;
  std::uint64_t seed = 0;
};

// HTTP-shaped result: status code plus JSON body (null for 204).
struct ApiResult {
  int status = 200;
  Json body;
};

// Task assignment, leases, quotas and judgment capture. Thread-safe; every
// state transition happens under one lock, and judgments are appended to the
// store before the transition is published.
class AnnotationService {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  AnnotationService(std::vector<AnnotationTaskSpec> tasks, AnnotationOptions options,
                    RunStore* store, Clock clock = std::chrono::system_clock::now,
                    TimestampFn timestamp = UtcNowIso8601);

  // 200 with a task, 204 when nothing is left for this annotator, 429 when
  // the quota is used up. An annotator holding a live lease gets that task
  // back.
  ApiResult NextTask(const std::string& annotator);
  // 201 stored; 404 unknown task; 409 duplicate or not leased; 422 invalid.
  ApiResult SubmitJudgment(const Json& payload);
  // 200 released; 404 no live lease.
  ApiResult Skip(const Json& payload);
  ApiResult Progress();

  // The setting an annotator's session is fixed to.
  EvaluationSetting SessionSetting(const std::string& annotator);

  struct TaskCounts {
    int completed = 0;
    int leased = 0;
    bool starved = false;
  };
  TaskCounts CountsFor(const std::string& task_id);

 private:
  struct Lease {
    std::chrono::system_clock::time_point expires;
  };
  struct TaskState {
    AnnotationTaskSpec spec;
    std::set<std::string> completed_by;
    std::map<std::string, Lease> leases;
    std::set<std::string> skipped_by;
    int skips = 0;
    bool starved = false;
  };
  struct Annotator {
    EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
    int completed = 0;
  };

  void ExpireLeases();
  Annotator& AnnotatorFor(const std::string& id);
  Json TaskView(const TaskState& task, const std::string& annotator,
                std::chrono::system_clock::time_point expires) const;
  int Load(const TaskState& t) const {
    return static_cast<int>(t.completed_by.size() + t.leases.size());
  }

  AnnotationOptions options_;
  RunStore* store_;
  Clock clock_;
  TimestampFn timestamp_;
  std::vector<EvaluationSetting> settings_;  // settings with tasks, enum order
  std::mutex mu_;
  std::vector<TaskState> tasks_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Annotator> annotators_;
};

}  // namespace ctxeval

#endif  // CTXEVAL_ANNOTATION_SERVICE_H_
