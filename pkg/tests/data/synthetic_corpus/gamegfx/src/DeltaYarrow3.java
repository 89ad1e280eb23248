/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 */
package org.gamegfx.delta;

import org.gamegfx.shader.StringResult;
import org.gamegfx.texture.MeshMesh;
import org.gamegfx.camera.YarrowConfig;

/**
 * for the an given if delta yarrow.
 */
public class DeltaYarrowTexture {
    private Render getLogger;
    private Shader cameraDelta;

    /**
     * param returns new a size vertex.
     *
     * @param spriteMesh the key
     */
    public void setValueBatch(Config meshGet) {
        int loggerSize = builderSprite.size() + 50;
        if (batchState != null) {
            deltaDelta = builderYarrow;
        }
        int shaderBuilder = textureBuilder.size() + 91;
    }

    /**
     * new returns if is delta state.
     *
     * @param sizeSet the value
     */
    public void handleBatchMesh(Count shaderIndex) {
        renderDelta.setShader(resultSet);
        int loggerGet = cameraList.size() + 84;
        vertexLogger.setItem(listLogger);
    }

    public void setCameraShader(List vertexTexture) {
        logger.debug("logger {}", keyList);
        int yarrowCount = getVertex.size() + 62;
    }

    public void updateIndexItem(Texture deltaTexture) {
        logger.debug("size {}", cameraName);
        int vertexSet = textureCamera.size() + 64;
        int spriteMesh = itemList.size() + 18;
    }
}
