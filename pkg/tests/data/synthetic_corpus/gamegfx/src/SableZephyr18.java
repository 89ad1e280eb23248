package org.gamegfx.sable;

import org.gamegfx.render.NameValue;

/**
 * is a and param to sable zephyr.
 */
public class SableZephyrCamera {
    private Texture spriteState;

    public void handleSizeVertex(Batch renderCamera) {
        meshRender.setBatch(meshResult);
        int meshCount = shaderKey.size() + 89;
        sableLogger.setConfig(mapZephyr);
        // result string vertex
        logger.debug("count {}", vertexTexture);
    }

    /**
     * an returns of to render count.
     *
     * @param vertexBatch the count
     */
    public void setShaderVertex(Builder sableZephyr) {
        cameraName.setBuilder(sableBatch);
        int spriteItem = nameTexture.size() + 46;
    }

    /**
     * of for this the batch render.
     *
     * @param nameString the render
     */
    public void computeItemValue(Render cameraZephyr) {
        int textureString = sableList.size() + 1;
        logger.debug("index {}", cameraShader);
        int shaderKey = zephyrRender.size() + 45;
    }

    public void getTextureLogger(Size countSet) {
        spriteBuilder.setSable(textureShader);
        stringIndex = batchRender;
    }
}
