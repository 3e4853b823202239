#pragma once

#include "radiosteg/appearance.hpp"
#include "radiosteg/channel.hpp"
#include "radiosteg/constellation.hpp"
#include "radiosteg/error.hpp"
#include "radiosteg/experiment.hpp"
#include "radiosteg/modem.hpp"
#include "radiosteg/rng.hpp"
#include "radiosteg/shift.hpp"
