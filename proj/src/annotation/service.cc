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

#include "ctxeval/annotation/service.h"

#include <algorithm>
#include <ctime>

#include "ctxeval/core/context.h"
#include "ctxeval/core/ids.h"
#include "ctxeval/core/rng.h"
#include "ctxeval/core/strings.h"
#include "ctxeval/core/verdict.h"
#include "ctxeval/judging/judging.h"

namespace ctxeval {
namespace {

constexpr std::size_t kMaxAnnotatorIdLength = 128;

ApiResult ErrorResult(int status, const std::string& code, const std::string& message,
                      Json extra = Json::object()) {
  extra["error"] = code;
  extra["message"] = message;
  return {status, extra};
}

std::optional<std::string> StringField(const Json& payload, const char* key) {
  auto it = payload.find(key);
  if (it == payload.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

bool ValidAnnotatorId(const std::string& id) {
  return !Trim(id).empty() && id.size() <= kMaxAnnotatorIdLength;
}

std::string IsoTime(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::optional<RawVerdict> ParseOverall(const std::string& value) {
  std::string key;
  for (char c : ToLower(value)) {
    if (c != ' ' && c != '_') key.push_back(c);
  }
  if (key == "response1") return RawVerdict::kResponse1;
  if (key == "response2") return RawVerdict::kResponse2;
  if (key == "tie") return RawVerdict::kTie;
  return std::nullopt;
}

}  // namespace

std::vector<AnnotationTaskSpec> BuildAnnotationTasks(
    const std::vector<Query>& queries, const std::vector<ModelPair>& pairs,
    const std::vector<EvaluationSetting>& settings,
    const std::vector<GenerationRecord>& generations,
    const std::map<std::string, SampledContext>& contexts) {
  std::map<std::tuple<std::string, std::string, GenerationMode>, const GenerationRecord*> index;
  for (const auto& g : generations) index[{g.query_id, g.model_id, g.generation_mode}] = &g;
  std::vector<AnnotationTaskSpec> out;
  for (const auto& pair : pairs) {
    for (auto setting : settings) {
      const auto mode = GenerationModeFor(setting);
      for (const auto& q : queries) {
        auto a = index.find({q.id, pair.candidate_a, mode});
        auto b = index.find({q.id, pair.candidate_b, mode});
        if (a == index.end() || b == index.end()) continue;
        AnnotationTaskSpec task;
        if (RequiresContext(setting)) {
          auto ctx = contexts.find(q.id);
          if (ctx == contexts.end()) continue;
          task.context = ctx->second;
        }
        task.query = q;
        task.setting = setting;
        task.candidate_a = pair.candidate_a;
        task.candidate_b = pair.candidate_b;
        task.response_a = a->second->text;
        task.response_b = b->second->text;
        task.task_id = DeriveTaskId(q.id, pair.candidate_a, pair.candidate_b, setting,
                                    task.context ? ContextDigest(*task.context) : "");
        out.push_back(std::move(task));
      }
    }
  }
  return out;
}

AnnotationService::AnnotationService(std::vector<AnnotationTaskSpec> tasks,
                                     AnnotationOptions options, RunStore* store, Clock clock,
                                     TimestampFn timestamp)
    : options_(options), store_(store), clock_(std::move(clock)), timestamp_(std::move(timestamp)) {
  if (options_.judgments_per_task < 1 || options_.quota < 1) {
    throw Error(ErrorCode::kConfigError, "judgments_per_task and quota must be positive");
  }
  std::set<EvaluationSetting> seen;
  for (auto& spec : tasks) {
    if (index_.count(spec.task_id)) continue;
    seen.insert(spec.setting);
    index_[spec.task_id] = tasks_.size();
    tasks_.push_back(TaskState{std::move(spec), {}, {}, {}, 0, false});
  }
  settings_.assign(seen.begin(), seen.end());
  if (store_ == nullptr) return;
  // Resume from earlier sessions.
  if (store_->Has(kinds::kJudgments)) {
    for (const auto& j : store_->Load<JudgmentRecord>(kinds::kJudgments).records) {
      if (j.rater_kind != RaterKind::kHuman) continue;
      auto it = index_.find(j.task_id);
      if (it == index_.end()) continue;
      if (tasks_[it->second].completed_by.insert(j.rater_id).second) {
        auto& annotator = AnnotatorFor(j.rater_id);
        ++annotator.completed;
      }
    }
  }
  if (store_->Has(kinds::kAnnotationEvents)) {
    for (const auto& e : store_->LoadJson(kinds::kAnnotationEvents).records) {
      if (e.value("event", "") != "skip") continue;
      auto it = index_.find(e.value("task_id", ""));
      if (it == index_.end()) continue;
      auto& task = tasks_[it->second];
      task.skipped_by.insert(e.value("annotator_id", ""));
      task.starved = ++task.skips >= options_.starve_after_skips;
    }
  }
}

AnnotationService::Annotator& AnnotationService::AnnotatorFor(const std::string& id) {
  auto it = annotators_.find(id);
  if (it != annotators_.end()) return it->second;
  Annotator a;
  if (!settings_.empty()) {
    a.setting = settings_[StreamFor(options_.seed, {"annotator_setting", id}).Below(settings_.size())];
  }
  return annotators_.emplace(id, a).first->second;
}

EvaluationSetting AnnotationService::SessionSetting(const std::string& annotator) {
  std::lock_guard lock(mu_);
  return AnnotatorFor(annotator).setting;
}

void AnnotationService::ExpireLeases() {
  const auto now = clock_();
  for (auto& t : tasks_) {
    std::erase_if(t.leases, [&](const auto& entry) { return entry.second.expires <= now; });
  }
}

Json AnnotationService::TaskView(const TaskState& task, const std::string& annotator,
                                 std::chrono::system_clock::time_point expires) const {
  const auto first = PresentationOrder(options_.seed, task.spec.task_id, annotator);
  const auto& r1 = first == Position::kA ? task.spec.response_a : task.spec.response_b;
  const auto& r2 = first == Position::kA ? task.spec.response_b : task.spec.response_a;
  Json context = nullptr;
  if (task.spec.context) {
    context = Json::array();
    for (const auto& p : task.spec.context->pairs) {
      context.push_back(Json{{"question", p.question}, {"answer", p.answer}});
    }
  }
  return Json{{"task_id", task.spec.task_id},
              {"annotator_id", annotator},
              {"query", task.spec.query.text},
              {"setting", EnumName(task.spec.setting)},
              {"context_aware", task.spec.context.has_value()},
              {"responses", Json::array({Json{{"label", "Response 1"}, {"text", r1}},
                                         Json{{"label", "Response 2"}, {"text", r2}}})},
              {"context", context},
              {"lease_expires_at", IsoTime(expires)}};
}

ApiResult AnnotationService::NextTask(const std::string& annotator) {
  if (!ValidAnnotatorId(annotator)) {
    return ErrorResult(400, "BadRequest", "annotator id is required");
  }
  std::lock_guard lock(mu_);
  ExpireLeases();
  auto& who = AnnotatorFor(annotator);
  for (const auto& t : tasks_) {
    if (auto it = t.leases.find(annotator); it != t.leases.end()) {
      return {200, TaskView(t, annotator, it->second.expires)};
    }
  }
  if (who.completed >= options_.quota) {
    return ErrorResult(429, "QuotaExhausted",
                       "annotator has completed " + std::to_string(who.completed) + " tasks");
  }
  TaskState* best = nullptr;
  for (auto& t : tasks_) {
    if (t.starved || t.spec.setting != who.setting) continue;
    if (Load(t) >= options_.judgments_per_task) continue;
    if (t.completed_by.count(annotator) || t.skipped_by.count(annotator)) continue;
    if (best == nullptr || Load(t) < Load(*best)) best = &t;
  }
  if (best == nullptr) return {204, nullptr};
  const auto expires = clock_() + options_.lease;
  best->leases[annotator] = Lease{expires};
  return {200, TaskView(*best, annotator, expires)};
}

ApiResult AnnotationService::SubmitJudgment(const Json& payload) {
  if (!payload.is_object()) return ErrorResult(400, "BadRequest", "body must be a JSON object");
  const auto task_id = StringField(payload, "task_id");
  const auto annotator = StringField(payload, "annotator_id");
  if (!task_id || !annotator || !ValidAnnotatorId(*annotator)) {
    return ErrorResult(400, "BadRequest", "task_id and annotator_id are required");
  }
  std::lock_guard lock(mu_);
  ExpireLeases();
  auto it = index_.find(*task_id);
  if (it == index_.end()) return ErrorResult(404, "UnknownTask", *task_id);
  auto& task = tasks_[it->second];
  if (task.completed_by.count(*annotator)) {
    return ErrorResult(409, "Duplicate", "task already judged by this annotator");
  }
  if (!task.leases.count(*annotator)) {
    return ErrorResult(409, "NotLeased", "task is not leased to this annotator");
  }

  const auto overall = StringField(payload, "overall");
  const auto verdict = overall ? ParseOverall(*overall) : std::nullopt;
  if (!verdict) {
    return ErrorResult(422, "InvalidOverall",
                       "overall must be \"Response 1\", \"Response 2\" or \"Tie\"");
  }
  const auto justification = StringField(payload, "justification");
  if (!justification || Trim(*justification).empty()) {
    return ErrorResult(422, "EmptyJustification", "a justification is required");
  }
  const auto first = PresentationOrder(options_.seed, task.spec.task_id, *annotator);
  std::optional<std::vector<ConstraintCheck>> checks;
  if (task.spec.context) {
    const std::size_t n = task.spec.context->pairs.size();
    const auto grid = payload.find("constraint_checks");
    Json missing = Json::array();
    std::vector<ConstraintCheck> parsed(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Json* row = nullptr;
      if (grid != payload.end() && grid->is_array() && i < grid->size()) row = &(*grid)[i];
      for (const char* key : {"response1", "response2"}) {
        if (row == nullptr || !row->is_object() || !row->contains(key) ||
            !(*row)[key].is_boolean()) {
          missing.push_back(Json{{"index", i}, {"response", key}});
          continue;
        }
        const bool value = (*row)[key].get<bool>();
        const bool is_first = std::string(key) == "response1";
        const bool for_a = is_first == (first == Position::kA);
        (for_a ? parsed[i].a : parsed[i].b) = value;
      }
    }
    if (grid != payload.end() && grid->is_array() && grid->size() > n) {
      return ErrorResult(422, "IncompleteConstraintGrid",
                         "constraint grid has more rows than followups",
                         Json{{"missing", missing}});
    }
    if (!missing.empty()) {
      return ErrorResult(422, "IncompleteConstraintGrid",
                         std::to_string(missing.size()) + " constraint checks unanswered",
                         Json{{"missing", missing}});
    }
    checks = std::move(parsed);
  }

  JudgmentRecord record;
  record.task_id = task.spec.task_id;
  record.query_id = task.spec.query.id;
  record.setting = task.spec.setting;
  record.candidate_a = task.spec.candidate_a;
  record.candidate_b = task.spec.candidate_b;
  record.rater_id = *annotator;
  record.rater_kind = RaterKind::kHuman;
  record.presented_first = first;
  record.raw_verdict = *verdict;
  record.canonical_verdict = CanonicalizeVerdict(*verdict, first);
  record.justification = std::string(Trim(*justification));
  record.constraint_checks = std::move(checks);
  if (store_ != nullptr) store_->Append(kinds::kJudgments, record);

  task.leases.erase(*annotator);
  task.completed_by.insert(*annotator);
  ++AnnotatorFor(*annotator).completed;
  return {201, Json{{"status", "stored"},
                    {"task_id", record.task_id},
                    {"judgments", task.completed_by.size()}}};
}

ApiResult AnnotationService::Skip(const Json& payload) {
  if (!payload.is_object()) return ErrorResult(400, "BadRequest", "body must be a JSON object");
  const auto task_id = StringField(payload, "task_id");
  auto annotator = StringField(payload, "annotator_id");
  if (!annotator) annotator = StringField(payload, "annotator");
  if (!task_id || !annotator) {
    return ErrorResult(400, "BadRequest", "task_id and annotator_id are required");
  }
  std::lock_guard lock(mu_);
  ExpireLeases();
  auto it = index_.find(*task_id);
  if (it == index_.end() || !tasks_[it->second].leases.count(*annotator)) {
    return ErrorResult(404, "UnknownLease", "no active lease on " + *task_id);
  }
  auto& task = tasks_[it->second];
  if (store_ != nullptr) {
    store_->AppendJson(kinds::kAnnotationEvents, Json{{"event", "skip"},
                                                      {"task_id", *task_id},
                                                      {"annotator_id", *annotator},
                                                      {"timestamp", timestamp_()}});
  }
  task.leases.erase(*annotator);
  task.skipped_by.insert(*annotator);
  task.starved = ++task.skips >= options_.starve_after_skips;
  return {200, Json{{"status", "skipped"}, {"task_id", *task_id}, {"starved", task.starved}}};
}

ApiResult AnnotationService::Progress() {
  std::lock_guard lock(mu_);
  ExpireLeases();
  Json settings = Json::object();
  int total_judgments = 0;
  for (const auto& t : tasks_) {
    auto& s = settings[std::string(EnumName(t.spec.setting))];
    if (s.is_null()) {
      s = Json{{"tasks", 0}, {"tasks_complete", 0}, {"tasks_starved", 0},
               {"judgments", 0}, {"leases_outstanding", 0}, {"skips", 0}};
    }
    s["tasks"] = s["tasks"].get<int>() + 1;
    const int done = static_cast<int>(t.completed_by.size());
    s["judgments"] = s["judgments"].get<int>() + done;
    total_judgments += done;
    if (done >= options_.judgments_per_task) s["tasks_complete"] = s["tasks_complete"].get<int>() + 1;
    if (t.starved) s["tasks_starved"] = s["tasks_starved"].get<int>() + 1;
    s["leases_outstanding"] = s["leases_outstanding"].get<int>() + static_cast<int>(t.leases.size());
    s["skips"] = s["skips"].get<int>() + t.skips;
  }
  return {200, Json{{"settings", settings},
                    {"judgments", total_judgments},
                    {"judgments_per_task", options_.judgments_per_task},
                    {"quota", options_.quota}}};
}

AnnotationService::TaskCounts AnnotationService::CountsFor(const std::string& task_id) {
  std::lock_guard lock(mu_);
  ExpireLeases();
  const auto& t = tasks_.at(index_.at(task_id));
  return {static_cast<int>(t.completed_by.size()), static_cast<int>(t.leases.size()), t.starved};
}

}  // namespace ctxeval
