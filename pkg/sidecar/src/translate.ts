// Channel translation. Providers are pluggable functions; the builtin
// one is the identity because the contract under test is the
// id-parallel file, not translation quality. A provider failure never
// kills the batch: the id survives with empty text and a marker.

export type TranslateFn = (text: string, target: string) => string;

export interface TranslationResult {
  id: string;
  text: string;
  failure?: string;
}

export const PROVIDERS: Record<string, TranslateFn> = {
  identity: (text) => text,
};

export function translateAll(
  lines: Array<{ id: string; text: string }>,
  target: string,
  provider: TranslateFn,
): TranslationResult[] {
  return lines.map(({ id, text }) => {
    try {
      return { id, text: provider(text, target) };
    } catch (error) {
      const reason = error instanceof Error ? error.message : String(error);
      console.error(`translation failed for '${id}': ${reason}`);
      return { id, text: '', failure: reason };
    }
  });
}

export function renderChannelFile(
  results: TranslationResult[],
  target: string,
  providerName: string,
): string {
  const lines = [
    `# channel: ${target} (provider: ${providerName})`,
    '# one utterance per line, id<TAB>text; a failed id keeps an empty',
    '# text and carries a third column "failed: <reason>"',
  ];
  for (const result of results) {
    lines.push(result.failure === undefined
      ? `${result.id}\t${result.text}`
      : `${result.id}\t\tfailed: ${result.failure}`);
  }
  return lines.join('\n') + '\n';
}
