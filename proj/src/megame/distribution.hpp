// Copyright 2026 The megame Authors
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

#include <map>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "megame/error.hpp"
#include "megame/rational.hpp"

namespace megame {

// A finite probability distribution with exact rational weights. Only
// outcomes with positive weight are stored, so two distributions compare
// equal iff they assign the same probability to every outcome.
template <typename Key>
class Distribution {
 public:
  using Weights = std::map<Key, Rational>;

  // Validates non-negativity, non-empty support and an exact total of one.
  // `what` names the distribution in error messages.
  static Distribution from_weights(const Weights& weights,
                                   const std::string& what = "distribution") {
    Rational total = 0;
    Weights kept;
    for (const auto& [key, w] : weights) {
      if (w < 0) {
        fail(ErrorKind::kInvalidArgument,
             what + " has negative weight " + to_string(w));
      }
      total += w;
      if (w > 0) kept.emplace(key, w);
    }
    if (kept.empty()) fail(ErrorKind::kNotNormalized, what + " has empty support");
    if (total != 1) {
      const Rational gap = total < 1 ? Rational(1 - total) : Rational(total - 1);
      fail(ErrorKind::kNotNormalized,
           what + " sums to " + to_string(total) + " (" +
               (total < 1 ? "deficit " : "excess ") + to_string(gap) + ")");
    }
    return Distribution(std::move(kept));
  }

  static Distribution point(const Key& key) {
    Weights w;
    w.emplace(key, Rational(1));
    return Distribution(std::move(w));
  }

  static Distribution uniform(const std::vector<Key>& keys) {
    if (keys.empty()) fail(ErrorKind::kNotNormalized, "uniform over empty set");
    Weights w;
    for (const auto& k : keys) w[k] += Rational(BigInt(1), BigInt(keys.size()));
    return Distribution(std::move(w));
  }

  Rational probability(const Key& key) const {
    auto it = weights_.find(key);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  template <typename Pred>
  Rational mass_where(Pred&& in_event) const {
    Rational m = 0;
    for (const auto& [key, w] : weights_) {
      if (in_event(key)) m += w;
    }
    return m;
  }

  Rational mass(const std::set<Key>& event) const {
    return mass_where([&](const Key& k) { return event.count(k) > 0; });
  }

  std::vector<Key> support() const {
    std::vector<Key> out;
    out.reserve(weights_.size());
    for (const auto& [key, w] : weights_) out.push_back(key);
    return out;
  }

  const Weights& weights() const { return weights_; }

  bool operator==(const Distribution& other) const = default;

 private:
  explicit Distribution(Weights w) : weights_(std::move(w)) {}

  Weights weights_;
};

// Conditionalization on the event {x : in_event(x)}.
template <typename Key, typename Pred>
Distribution<Key> condition_on(const Distribution<Key>& prior, Pred&& in_event) {
  const Rational event_mass = prior.mass_where(in_event);
  if (event_mass == 0) fail(ErrorKind::kNullEvent, "conditioning on null event");
  typename Distribution<Key>::Weights posterior;
  for (const auto& [key, w] : prior.weights()) {
    if (in_event(key)) posterior.emplace(key, w / event_mass);
  }
  return Distribution<Key>::from_weights(posterior, "posterior");
}

template <typename Key>
Distribution<Key> bayes_update(const Distribution<Key>& prior,
                               const std::set<Key>& event) {
  return condition_on(prior, [&](const Key& k) { return event.count(k) > 0; });
}

// Push-forward of `dist` along `project`.
template <typename Key, typename Fn>
auto push_forward(const Distribution<Key>& dist, Fn&& project)
    -> Distribution<std::decay_t<decltype(project(std::declval<const Key&>()))>> {
  using Out = std::decay_t<decltype(project(std::declval<const Key&>()))>;
  typename Distribution<Out>::Weights w;
  for (const auto& [key, p] : dist.weights()) w[project(key)] += p;
  return Distribution<Out>::from_weights(w, "marginal");
}

}  // namespace megame
