#pragma once

namespace frex {

/// Which kernel implementation to run. Serial is the reference path;
/// Parallel uses OpenMP worksharing and falls back to serial when built
/// without OpenMP or when called from inside an active parallel region.
enum class Exec { Serial, Parallel };

/// Process-wide default used by kernels when no policy is passed explicitly.
Exec default_exec();
void set_default_exec(Exec e);

/// True if the Parallel path can actually fan out right now.
bool parallel_available();

}  // namespace frex
