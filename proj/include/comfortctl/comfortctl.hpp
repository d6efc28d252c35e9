#pragma once

#include "comfortctl/aggregate.hpp"
#include "comfortctl/artifacts.hpp"
#include "comfortctl/config.hpp"
#include "comfortctl/errors.hpp"
#include "comfortctl/occupant.hpp"
#include "comfortctl/policy.hpp"
#include "comfortctl/thermal.hpp"
#include "comfortctl/weather.hpp"
