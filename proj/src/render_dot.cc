/// @file render_dot.cc
#include <cctype>

#include "taskcon/analysis.h"
#include "taskcon/error.h"
#include "taskcon/render.h"

namespace taskcon::render {

namespace {

constexpr std::string_view kInfoPalette[] = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
    "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
};

constexpr std::string_view kSubtaskFill = "#d9d9d9";

/// Quoted DOT string; text is reproduced literally.
std::string DotString(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

std::string Slugger::Slug(std::string_view name) {
  std::string base;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if ((u & 0xC0) == 0x80) continue;  // UTF-8 continuation byte
    base += std::isalnum(u) && u < 0x80 ? static_cast<char>(std::tolower(u)) : '_';
  }
  if (base.empty()) base = "_";
  std::string slug = base;
  int& count = used_[base];
  ++count;
  if (count > 1) {
    slug = base + "_" + std::to_string(count);
    // "a_2" may itself be a taken base name
    while (used_.count(slug)) slug = base + "_" + std::to_string(++count);
    used_[slug] = 1;
  }
  return slug;
}

std::string_view InfoColor(std::size_t index) {
  return kInfoPalette[index % std::size(kInfoPalette)];
}

std::string_view RelevanceShade(Relevance relevance) {
  switch (relevance) {
    case Relevance::kNotImportant: return "#f0f0f0";
    case Relevance::kRatherImportant: return "#c8c8c8";
    case Relevance::kImportant: return "#969696";
    case Relevance::kVeryImportant: return "#525252";
  }
  return "#ffffff";
}

std::string to_dot(const Task& task, std::span<const InformationObject> infos) {
  for (const auto& d : analysis::check_plan(task)) {
    if (d.severity == Severity::kError && d.rule >= Rule::kR1 && d.rule <= Rule::kR4) {
      throw InvalidModelError("cannot render task \"" + task.name + "\": " + d.message);
    }
  }

  Slugger slugs;
  struct SubtaskIds {
    std::string cluster;
    std::string anchor;  // first responsibility node; edges attach here
  };
  std::map<std::string, SubtaskIds> ids;

  std::string out = "digraph " + DotString(task.name) + " {\n";
  out += "  compound=true;\n";
  out += "  node [shape=box, fontname=\"Helvetica\"];\n";
  out += "  edge [fontname=\"Helvetica\"];\n";

  for (const auto& s : task.subtasks) {
    std::string slug = slugs.Slug(s.name);
    SubtaskIds sub{"cluster_" + slug, ""};
    out += "  subgraph " + sub.cluster + " {\n";
    out += "    label=" + DotString(s.intention) + ";\n";
    out += "    style=filled;\n";
    out += "    fillcolor=\"" + std::string(kSubtaskFill) + "\";\n";
    std::string tooltip;
    for (const auto& p : s.preconditions) tooltip += "pre: " + p + "\n";
    for (const auto& p : s.postconditions) tooltip += "post: " + p + "\n";
    if (!tooltip.empty()) {
      tooltip.pop_back();
      out += "    tooltip=" + DotString(tooltip) + ";\n";
    }
    for (std::size_t i = 0; i < s.responsibilities.size(); ++i) {
      std::string node = slugs.Slug(slug + "_r" + std::to_string(i + 1));
      if (sub.anchor.empty()) sub.anchor = node;
      out += "    " + node + " [label=" + DotString(s.responsibilities[i].description) +
             ", style=\"rounded,filled\", fillcolor=\"#ffffff\"];\n";
    }
    if (sub.anchor.empty()) {
      // Responsibilities are mandatory; keep the cluster addressable anyway.
      sub.anchor = slugs.Slug(slug + "_anchor");
      out += "    " + sub.anchor + " [label=\"\", style=invis];\n";
    }
    out += "  }\n";
    ids.emplace(s.name, std::move(sub));
  }

  std::map<std::string, std::string> info_ids;
  for (std::size_t i = 0; i < infos.size(); ++i) {
    const auto& info = infos[i];
    bool used = false;
    for (const auto& s : task.subtasks) used = used || s.Consumes(info.name) || s.Produces(info.name);
    if (!used) continue;
    std::string node = slugs.Slug(info.name);
    info_ids.emplace(info.name, node);
    out += "  " + node + " [label=" + DotString(info.name) + ", style=filled, fillcolor=\"" +
           std::string(InfoColor(i)) + "\"];\n";
  }

  for (const auto& e : task.plan.edges) {
    const auto& from = ids.at(e.from);
    const auto& to = ids.at(e.to);
    out += "  " + from.anchor + " -> " + to.anchor + " [ltail=" + from.cluster +
           ", lhead=" + to.cluster;
    if (e.guard) out += ", label=" + DotString(*e.guard);
    out += "];\n";
  }

  for (const auto& s : task.subtasks) {
    const auto& sub = ids.at(s.name);
    for (const auto& p : s.produces) {
      auto it = info_ids.find(p.name);
      if (it == info_ids.end()) continue;
      out += "  " + sub.anchor + " -> " + it->second + " [ltail=" + sub.cluster +
             ", style=dashed];\n";
    }
    for (const auto& c : s.consumes) {
      auto it = info_ids.find(c.name);
      if (it == info_ids.end()) continue;
      out += "  " + it->second + " -> " + sub.anchor + " [lhead=" + sub.cluster +
             ", style=dashed];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace taskcon::render
