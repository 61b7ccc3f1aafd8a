#ifndef BTLRANK_ERROR_HPP
#define BTLRANK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace btlrank {

enum class errc {
  self_loop,
  duplicate_edge,
  node_out_of_range,
  bad_graph,
  disconnected,
  same_node,
  no_convergence,
  too_large,
  bad_spec,
  exhausted_attempts,
  bad_skewness,
  dimension_mismatch,
  bad_delta,
  zero_vector,
  non_positive_entry,
  non_finite_input,
  degenerate_fit,
  io_error,
  format_error,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
    throw Error(code, msg);
}

// Exit-code class used by the CLI: 2 = data/format error, 3 = numerical failure.
inline int exit_class(errc c) {
    switch (c) {
        case errc::disconnected:
        case errc::no_convergence:
        case errc::exhausted_attempts:
            return 3;
        default:
            return 2;
    }
}

} // namespace btlrank

#endif // BTLRANK_ERROR_HPP
