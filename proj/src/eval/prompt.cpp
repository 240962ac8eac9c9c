#include <algorithm>

#include "polarbench/evalharness.hpp"

namespace polarbench {

namespace {

constexpr const char* kConversionHint =
    "Hint: before solving, re-map the circular layout onto an equivalent rectangular grid. Treat ring i as row i "
    "(the innermost ring becomes the top row) and sector j as column j (sector 0 at 12 o'clock becomes the leftmost "
    "column, and clockwise becomes rightward). Keep the stated wall and wrapping rules, solve the task on that "
    "grid, and translate the result back to rings and sectors if needed.";

constexpr const char* kCaptionRequest =
    "Describe this image in as much detail as you can: the kind of grid, how many rows, columns, rings or sectors "
    "it has, and every mark, letter, color, line and arrow together with its position. Your description will later "
    "be used on its own, without the image, to answer a question about the picture.";

MessagePart text(std::string t) { return {MessagePart::Kind::Text, std::move(t), {}, {}}; }
MessagePart image(const Instance& inst) { return {MessagePart::Kind::Image, {}, inst.id, inst.svg}; }

// The question repeats the narrative first; the rest follows the image.
std::string after_narrative(const Instance& inst) {
  std::string rest = inst.question;
  if (!inst.narrative.empty() && rest.rfind(inst.narrative, 0) == 0) rest.erase(0, inst.narrative.size());
  const auto first = rest.find_first_not_of("\n ");
  return first == std::string::npos ? std::string() : rest.substr(first);
}

std::vector<MessagePart> standard_parts(const Instance& inst) {
  std::vector<MessagePart> parts;
  if (!inst.narrative.empty()) parts.push_back(text(inst.narrative));
  parts.push_back(image(inst));
  parts.push_back(text(after_narrative(inst)));
  return parts;
}

}  // namespace

std::string_view to_string(PromptMode m) {
  switch (m) {
    case PromptMode::Standard: return "standard";
    case PromptMode::ConversionHint: return "conversion-hint";
    case PromptMode::FewShot: return "few-shot";
    case PromptMode::TwoStageCaption: return "two-stage-caption";
    case PromptMode::TwoStageAnswer: return "two-stage";
  }
  return "?";
}

PromptMode prompt_mode_from_string(std::string_view s) {
  for (auto m : {PromptMode::Standard, PromptMode::ConversionHint, PromptMode::FewShot, PromptMode::TwoStageCaption,
                 PromptMode::TwoStageAnswer}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown prompt mode '" + std::string(s) + "'");
}

size_t image_count(const Prompt& p) {
  size_t n = 0;
  for (const auto& m : p)
    for (const auto& part : m.parts) n += part.kind == MessagePart::Kind::Image;
  return n;
}

Prompt build_prompt(const Instance& inst, PromptMode mode, const PromptInputs& in) {
  Prompt p;
  switch (mode) {
    case PromptMode::Standard:
      p.push_back({"user", standard_parts(inst)});
      break;
    case PromptMode::ConversionHint: {
      auto parts = standard_parts(inst);
      if (inst.topology == Topology::Polar) parts.push_back(text(kConversionHint));
      p.push_back({"user", std::move(parts)});
      break;
    }
    case PromptMode::FewShot: {
      if (in.exemplars.size() < kFewShotCount) {
        throw PromptError("few-shot prompting needs " + std::to_string(kFewShotCount) + " exemplars, got " +
                          std::to_string(in.exemplars.size()));
      }
      for (size_t i = 0; i < kFewShotCount; ++i) {
        const Instance& ex = *in.exemplars[i];
        if (ex.task_id != inst.task_id || ex.topology != Topology::Polar || ex.seed == inst.seed) {
          throw PromptError("exemplar " + ex.id + " must be a Polar instance of " + inst.task_id +
                            " with a different seed");
        }
        p.push_back({"user", standard_parts(ex)});
        p.push_back({"assistant", {text("Answer: " + to_text(ex.ground_truth))}});
      }
      p.push_back({"user", standard_parts(inst)});
      break;
    }
    case PromptMode::TwoStageCaption:
      p.push_back({"user", {image(inst), text(kCaptionRequest)}});
      break;
    case PromptMode::TwoStageAnswer:
      if (!in.caption) throw PromptError("the answer stage needs the caption from the first stage");
      p.push_back({"user",
                   {text("You cannot see the picture. Here is a description of it:\n\n" + *in.caption + "\n\n" +
                         inst.question)}});
      break;
  }
  return p;
}

std::vector<const Instance*> pick_exemplars(const Instance& target, const std::vector<Instance>& pool) {
  std::vector<const Instance*> cands;
  for (const auto& i : pool)
    if (i.task_id == target.task_id && i.topology == Topology::Polar && i.seed != target.seed) cands.push_back(&i);
  if (cands.size() < kFewShotCount) {
    throw PromptError("only " + std::to_string(cands.size()) + " Polar exemplars available for " + target.task_id);
  }
  // The seeds following the target's, wrapping around.
  std::sort(cands.begin(), cands.end(), [&](const Instance* a, const Instance* b) {
    return a->seed - target.seed < b->seed - target.seed;
  });
  cands.resize(kFewShotCount);
  return cands;
}

}  // namespace polarbench
