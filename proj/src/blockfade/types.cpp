#include "blockfade/types.hpp"

#include <stdexcept>

namespace blockfade {

const char* to_string(ModelKind kind) {
  return kind == ModelKind::two_state ? "two_state" : "four_state";
}

const char* to_string(State s) {
  switch (s) {
    case State::unshadowed: return "unshadowed";
    case State::decaying: return "decaying";
    case State::shadowed: return "shadowed";
    case State::rising: return "rising";
  }
  throw std::logic_error("unreachable state");
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "two_state") return ModelKind::two_state;
  if (s == "four_state") return ModelKind::four_state;
  throw std::invalid_argument("unknown model kind: " + s);
}

State state_from_string(const std::string& s) {
  if (s == "unshadowed") return State::unshadowed;
  if (s == "decaying") return State::decaying;
  if (s == "shadowed") return State::shadowed;
  if (s == "rising") return State::rising;
  throw std::invalid_argument("unknown state: " + s);
}

const char* to_string(Family f) {
  switch (f) {
    case Family::log_normal: return "log_normal";
    case Family::weibull: return "weibull";
    case Family::normal: return "normal";
    case Family::uniform: return "uniform";
  }
  throw std::logic_error("unreachable family");
}

Family family_from_string(const std::string& s) {
  if (s == "log_normal") return Family::log_normal;
  if (s == "weibull") return Family::weibull;
  if (s == "normal") return Family::normal;
  if (s == "uniform") return Family::uniform;
  throw std::invalid_argument("unknown family: " + s);
}

const std::vector<std::pair<State, State>>& legal_transitions(ModelKind kind) {
  static const std::vector<std::pair<State, State>> two = {
      {State::unshadowed, State::shadowed},
      {State::shadowed, State::unshadowed},
  };
  static const std::vector<std::pair<State, State>> four = {
      {State::unshadowed, State::decaying},
      {State::decaying, State::shadowed},
      {State::shadowed, State::rising},
      {State::rising, State::unshadowed},
  };
  return kind == ModelKind::two_state ? two : four;
}

}  // namespace blockfade
