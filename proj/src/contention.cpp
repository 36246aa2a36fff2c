#include "raqs/contention.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace raqs {

bool in_contention(const Channel& channel, const DirectedLink& a,
                   const DirectedLink& b, double sigma) {
  if (a.shares_node(b)) return true;
  const double worst = std::max(channel.interference_power(b, a),
                                channel.interference_power(a, b));
  return worst > sigma;
}

bool in_contention(const LinkBudget& budget, std::size_t a, std::size_t b,
                   double sigma) {
  if (budget.shares_node(a, b)) return true;
  return std::max(budget.interference(a, b), budget.interference(b, a)) > sigma;
}

ContentionGraph ContentionGraph::build(
    const Channel& channel,
    const std::vector<std::pair<std::size_t, DirectedLink>>& hops, double sigma) {
  std::vector<std::size_t> ids;
  ids.reserve(hops.size());
  for (const auto& h : hops) ids.push_back(h.first);
  return ContentionGraph(std::move(ids), sigma, [&](std::size_t i, std::size_t j) {
    return in_contention(channel, hops[i].second, hops[j].second, sigma);
  });
}

std::size_t ContentionGraph::local(std::size_t flow) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == flow && alive_[i]) return i;
  }
  throw std::out_of_range("contention graph: no vertex " + std::to_string(flow));
}

bool ContentionGraph::empty() const {
  return std::none_of(alive_.begin(), alive_.end(), [](char a) { return a != 0; });
}

std::size_t ContentionGraph::size() const {
  return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), 1));
}

bool ContentionGraph::contains(std::size_t flow) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == flow && alive_[i]) return true;
  }
  return false;
}

bool ContentionGraph::adjacent(std::size_t a, std::size_t b) const {
  return adj_[local(a) * ids_.size() + local(b)] != 0;
}

std::size_t ContentionGraph::degree(std::size_t flow) const {
  const std::size_t i = local(flow);
  const std::size_t n = ids_.size();
  std::size_t d = 0;
  for (std::size_t j = 0; j < n; ++j) d += (alive_[j] && adj_[i * n + j]) ? 1 : 0;
  return d;
}

std::vector<std::size_t> ContentionGraph::vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (alive_[i]) out.push_back(ids_[i]);
  }
  return out;
}

std::vector<std::size_t> ContentionGraph::neighbors(std::size_t flow) const {
  const std::size_t i = local(flow);
  const std::size_t n = ids_.size();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (alive_[j] && adj_[i * n + j]) out.push_back(ids_[j]);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> ContentionGraph::edges() const {
  const std::size_t n = ids_.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (alive_[i] && alive_[j] && adj_[i * n + j]) out.emplace_back(ids_[i], ids_[j]);
    }
  }
  return out;
}

void ContentionGraph::remove(std::size_t flow) { alive_[local(flow)] = 0; }

void ContentionGraph::remove_closed_neighborhood(std::size_t flow) {
  const std::size_t i = local(flow);
  const std::size_t n = ids_.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (adj_[i * n + j]) alive_[j] = 0;
  }
  alive_[i] = 0;
}

std::string ContentionGraph::to_string() const {
  std::ostringstream os;
  const auto vs = vertices();
  for (std::size_t k = 0; k < vs.size(); ++k) os << (k ? " " : "") << vs[k];
  os << '|';
  const auto es = edges();
  for (std::size_t k = 0; k < es.size(); ++k) {
    os << (k ? " " : "") << es[k].first << '-' << es[k].second;
  }
  return os.str();
}

}  // namespace raqs
