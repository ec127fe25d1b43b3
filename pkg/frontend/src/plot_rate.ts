#!/usr/bin/env node
import { runCli } from "./render";

process.exit(runCli("rate", process.argv.slice(2)));
