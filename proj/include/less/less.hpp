#pragma once

// LESS: scattering-based event segmentation of time series, with DTW and
// SAX baselines and an evaluation harness. Everything is header-only; this
// umbrella pulls in the full pipeline.

#include "less/baselines.hpp"
#include "less/config_io.hpp"
#include "less/csv_io.hpp"
#include "less/eval.hpp"
#include "less/event_io.hpp"
#include "less/events.hpp"
#include "less/fft.hpp"
#include "less/pgm.hpp"
#include "less/run_config.hpp"
#include "less/scatter_io.hpp"
#include "less/scattering.hpp"
#include "less/spectral.hpp"
#include "less/synth.hpp"
#include "less/time_series.hpp"
#include "less/trajectory_graph.hpp"
#include "less/wav_io.hpp"
