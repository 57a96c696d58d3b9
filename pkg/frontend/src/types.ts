/** Frozen wire contract of the inference service (/api/v1/). */

export type Bucket = "low" | "med" | "high";

export interface TokenInfo {
  surface: string;
  class: string;
  index: number;
}

export interface TokenizeResponse {
  tokens: TokenInfo[];
  hasUnknown: boolean;
}

export interface DecodeOptions {
  mode: "greedy" | "sample";
  temperature?: number;
  k?: number;
  seed?: number;
}

export interface InfillRequest {
  name: string;
  spans: [number, number][];
  targetBucket: Bucket;
  decode?: DecodeOptions;
}

export interface Candidate {
  name: string | null;
  fragments: string[][];
  validity: "Valid" | "Identity" | "SentinelMismatch" | "RoundTripFail";
  propertyBefore: number;
  propertyAfter: number | null;
  bucketAfter: string | null;
}

export interface InfillResponse {
  candidates: Candidate[];
}

export interface VocabSummary {
  version: string;
  size: number;
  contentTokens: number;
  classCounts: Record<string, number>;
}

export interface Health {
  status: string;
  checkpointVersion?: number;
  modelStep?: number;
}
