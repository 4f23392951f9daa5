#ifndef DLC_DLC_HPP
#define DLC_DLC_HPP

#include "dlc/compress.hpp"
#include "dlc/decision_list.hpp"
#include "dlc/distributions.hpp"
#include "dlc/encoding.hpp"
#include "dlc/generators.hpp"
#include "dlc/inequalities.hpp"
#include "dlc/io.hpp"
#include "dlc/kernel.hpp"
#include "dlc/limits.hpp"
#include "dlc/modes.hpp"
#include "dlc/random.hpp"
#include "dlc/report_io.hpp"
#include "dlc/rational.hpp"
#include "dlc/restriction.hpp"
#include "dlc/sampling.hpp"
#include "dlc/subcube.hpp"
#include "dlc/usefulness.hpp"

#endif  // DLC_DLC_HPP
