#include "wmeval/judge/pipelines.hpp"

#include "wmeval/core/errors.hpp"
#include "wmeval/core/parallel.hpp"
#include "wmeval/judge/frames.hpp"
#include "wmeval/judge/sampling.hpp"

#include <algorithm>

namespace wmeval::judge {

namespace {

int frame_count(const FrameList& frames) {
  if (frames.empty()) throw FrameError("episode has no frames");
  return static_cast<int>(frames.size());
}

std::size_t workers(const PipelineOptions& opt) {
  return static_cast<std::size_t>(std::max(1, opt.parallelism));
}

JudgeRequest request(PromptId id, std::string text, std::vector<cv::Mat> images) {
  JudgeRequest req;
  req.prompt = id;
  req.text = std::move(text);
  for (const auto& img : images) req.images_png_b64.push_back(encode_png_base64(img));
  return req;
}

std::vector<JudgeVerdict> pairframe_votes(const FrameList& frames, PromptId id, Judge& judge,
                                          const PromptLibrary& prompts,
                                          const PipelineOptions& opt) {
  const auto pairs = midcut_pairs(frame_count(frames));
  const std::string text = prompts.render(id);
  std::vector<JudgeVerdict> votes(pairs.size());
  parallel_for(pairs.size(), workers(opt), [&](std::size_t i) {
    const auto [a, b] = pairs[i];
    const auto img = pairframe_composite(load_frame(frames[static_cast<std::size_t>(a)]),
                                         load_frame(frames[static_cast<std::size_t>(b)]));
    votes[i] = judge.ask(request(id, text, {img}));
  });
  return votes;
}

}  // namespace

PcsEpisode run_pcs(const FrameList& frames, Judge& judge, const PromptLibrary& prompts,
                   const PipelineOptions& opt) {
  PcsEpisode e;
  e.obj_votes = pairframe_votes(frames, PromptId::ObjectConsistency, judge, prompts, opt);
  e.occ_votes = pairframe_votes(frames, PromptId::OcclusionConsistency, judge, prompts, opt);
  e.obj = pairframe_score(e.obj_votes);
  e.occ = pairframe_score(e.occ_votes);
  e.pcs = pcs(e.obj ? std::optional(e.obj->score) : std::nullopt,
              e.occ ? std::optional(e.occ->score) : std::nullopt);
  return e;
}

VqsEpisode run_vqs(const FrameList& frames, Judge& judge, const PromptLibrary& prompts,
                   const PipelineOptions& opt) {
  const auto idx = uniform_indices(frame_count(frames), opt.vqs_frames);
  const auto img = tile_horizontal(load_frames(frames, idx));
  VqsEpisode e;
  e.verdict = judge.ask(request(PromptId::PhysLawVqs, prompts.render(PromptId::PhysLawVqs), {img}));
  e.payload = e.verdict.vqs();
  if (e.payload) e.vqs = vqs(e.payload->video_ok, e.payload->has_motion);
  return e;
}

TcrEpisode run_tcr(const FrameList& frames, const std::string& instruction, Judge& judge,
                   const PromptLibrary& prompts, const PipelineOptions& opt) {
  const auto idx = uniform_indices(frame_count(frames), opt.tcr_frames);
  auto images = load_frames(frames, idx);
  if (opt.tcr_mode == TcrMode::Tiled) images = {tile_grid(images, 4)};
  TcrEpisode e;
  e.verdict = judge.ask(request(PromptId::TaskCompletion,
                                prompts.render(PromptId::TaskCompletion,
                                               {{"instruction", instruction}}),
                                std::move(images)));
  e.value = e.verdict.binary();
  return e;
}

OpsEpisode run_ops(const FrameList& predicted, const FrameList& ground_truth,
                   const std::string& instruction, Judge& judge, const PromptLibrary& prompts,
                   const PipelineOptions& opt) {
  const auto pi = uniform_indices(frame_count(predicted), opt.ops_frames);
  const auto gi = uniform_indices(frame_count(ground_truth), opt.ops_frames);
  const std::string text =
      prompts.render(PromptId::ObjectPreservation, {{"instruction", instruction}});
  OpsEpisode e;
  e.votes.resize(pi.size());
  parallel_for(pi.size(), workers(opt), [&](std::size_t i) {
    e.votes[i] = judge.ask(request(PromptId::ObjectPreservation, text,
                                   {load_frame(predicted[static_cast<std::size_t>(pi[i])]),
                                    load_frame(ground_truth[static_cast<std::size_t>(gi[i])])}));
  });
  e.aggregate = ops_aggregate(e.votes);
  return e;
}

BiasEpisode run_bias(const FrameList& baseline, const FrameList& perturbed, bool lenient,
                     Judge& judge, const PromptLibrary& prompts, const PipelineOptions& opt) {
  const auto bi = late_phase_indices(frame_count(baseline));
  const auto qi = late_phase_indices(frame_count(perturbed));
  const PromptId id = lenient ? PromptId::BiasLenient : PromptId::BiasStandard;
  const std::string text = prompts.render(id);
  BiasEpisode e;
  e.votes.resize(bi.size());
  parallel_for(bi.size(), workers(opt), [&](std::size_t i) {
    const auto img = side_by_side(load_frame(baseline[static_cast<std::size_t>(bi[i])]),
                                  load_frame(perturbed[static_cast<std::size_t>(qi[i])]));
    e.votes[i] = judge.ask(request(id, text, {img}));
  });
  e.aggregate = bias_vote(e.votes);
  return e;
}

nlohmann::json to_json(const JudgeVerdict& v) {
  nlohmann::json j{{"kind", to_string(v.kind)}, {"raw", v.raw}, {"discarded", v.discarded()}};
  if (const auto ab = v.ab()) j["value"] = *ab == AB::A ? "A" : "B";
  if (const auto b = v.binary()) j["value"] = *b;
  if (const auto c = v.comparison()) j["value"] = *c == Comparison::Same ? "Same" : "Different";
  if (const auto q = v.vqs()) {
    j["value"] = {{"video_ok", q->video_ok}, {"has_motion", q->has_motion}, {"reason", q->reason}};
  }
  return j;
}

namespace {

nlohmann::json votes_json(const std::vector<JudgeVerdict>& votes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : votes) arr.push_back(to_json(v));
  return arr;
}

nlohmann::json pairframe_json(const std::optional<PairframeResult>& r) {
  if (!r) return nullptr;
  return {{"score", r->score},
          {"label", r->label == AB::A ? "A" : "B"},
          {"n", r->n},
          {"n_b", r->n_b},
          {"n_discarded", r->n_discarded}};
}

template <typename T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const PcsEpisode& e) {
  return {{"obj", pairframe_json(e.obj)},
          {"occ", pairframe_json(e.occ)},
          {"pcs", opt_json(e.pcs)},
          {"obj_votes", votes_json(e.obj_votes)},
          {"occ_votes", votes_json(e.occ_votes)}};
}

nlohmann::json to_json(const VqsEpisode& e) {
  return {{"vqs", opt_json(e.vqs)}, {"verdict", to_json(e.verdict)}};
}

nlohmann::json to_json(const TcrEpisode& e) {
  return {{"tcr", opt_json(e.value)}, {"verdict", to_json(e.verdict)}};
}

nlohmann::json to_json(const OpsEpisode& e) {
  nlohmann::json agg = nullptr;
  if (e.aggregate) {
    agg = {{"confidence", e.aggregate->confidence},
           {"label", e.aggregate->preserved ? "preserved" : "flawed"},
           {"n", e.aggregate->n},
           {"ones", e.aggregate->ones},
           {"n_discarded", e.aggregate->n_discarded}};
  }
  return {{"ops", agg}, {"votes", votes_json(e.votes)}};
}

nlohmann::json to_json(const BiasEpisode& e) {
  nlohmann::json agg = nullptr;
  if (e.aggregate) {
    agg = {{"label", e.aggregate->label == BiasLabel::Y ? "Y" : "N"},
           {"n_same", e.aggregate->n_same},
           {"n", e.aggregate->n},
           {"n_discarded", e.aggregate->n_discarded}};
  }
  return {{"bias", agg}, {"votes", votes_json(e.votes)}};
}

}  // namespace wmeval::judge
