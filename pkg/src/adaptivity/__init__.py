from src.adaptivity.indicator import IndicatorThresholds, indicator_kernel, jump_indicator
from src.adaptivity.order_field import Decision, OrderField, StepStats, apply_order_change
from src.adaptivity.ranges import base_ranges, correction_ranges, full_range
