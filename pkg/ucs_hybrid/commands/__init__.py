"""UCS hybrid toolkit - CLI subcommands package"""
from ucs_hybrid.commands import compare, predict, summarize, sweep, synth, train
