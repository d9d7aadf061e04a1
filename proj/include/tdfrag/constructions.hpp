#pragma once

#include "tdfrag/constructions/fat_cover.hpp"
#include "tdfrag/constructions/layered.hpp"
#include "tdfrag/constructions/narrow_strip.hpp"
#include "tdfrag/constructions/power.hpp"
#include "tdfrag/cover.hpp"
