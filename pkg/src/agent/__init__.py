# Agent package