#!/usr/bin/env node
import { runCli } from "./render";

process.exit(runCli("jaccard_map", process.argv.slice(2)));
