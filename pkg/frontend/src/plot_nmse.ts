#!/usr/bin/env node
import { runCli } from "./render";

process.exit(runCli("nmse", process.argv.slice(2)));
